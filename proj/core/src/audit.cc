// Copyright 2026 The medcon Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "medcon/audit.h"

#include <algorithm>
#include <string>

#include "medcon/error.h"

namespace medcon {

int AuditReport::secure_count() const {
  return static_cast<int>(
      std::count_if(nodes.begin(), nodes.end(),
                    [](const NodeAudit& a) { return a.secure; }));
}

AuditReport audit(const RunTrace& trace, const PrivateData& s) {
  s.validate(trace.n);
  AuditReport report;
  report.nodes.resize(trace.n);
  for (const RoundRecord& r : trace.rounds) {
    for (int i = 0; i < trace.n; ++i) {
      if (!r.intervals[i].contains(s[i])) continue;
      NodeAudit& a = report.nodes[i];
      a.secure = false;
      if (!a.first_violation) a.first_violation = r.t;
      a.violation_rounds.push_back(r.t);
    }
  }
  return report;
}

double secure_fraction(const AuditReport& report) {
  if (report.nodes.empty()) {
    throw InvalidParameterError("secure_fraction: empty report");
  }
  return static_cast<double>(report.secure_count()) / report.nodes.size();
}

Transcript build_transcript(const RunTrace& trace, const Graph& g,
                            const PrivateData& s,
                            std::span<const int> corrupt_set) {
  Transcript tr;
  tr.n = trace.n;
  tr.initial_z = trace.initial_z;
  tr.broadcasts.reserve(trace.rounds.size());
  for (const RoundRecord& r : trace.rounds) tr.broadcasts.push_back({r.t, r.x});

  tr.corrupt_set.assign(corrupt_set.begin(), corrupt_set.end());
  std::sort(tr.corrupt_set.begin(), tr.corrupt_set.end());
  tr.corrupt_set.erase(std::unique(tr.corrupt_set.begin(), tr.corrupt_set.end()),
                       tr.corrupt_set.end());
  for (int j : tr.corrupt_set) {
    if (j < 0 || j >= g.n()) {
      throw InvalidParameterError("corrupt node " + std::to_string(j) +
                                  " out of range");
    }
    CorruptNodeView view{j, s[j], {}};
    view.z_history.reserve(trace.rounds.size());
    for (const RoundRecord& r : trace.rounds) {
      view.z_history.emplace_back(r.z.values.begin() + g.out_begin(j),
                                  r.z.values.begin() + g.out_end(j));
    }
    tr.corrupt_internals.push_back(std::move(view));
  }
  return tr;
}

std::vector<ZState> track_z(const Transcript& transcript, const Graph& g,
                            double c, double theta) {
  if (transcript.n != g.n() ||
      transcript.initial_z.values.size() != g.num_directed_edges()) {
    throw IncompleteTranscriptError("transcript does not match the graph");
  }
  std::vector<ZState> history;
  history.reserve(transcript.broadcasts.size() + 1);
  history.push_back(transcript.initial_z);
  for (std::size_t t = 0; t < transcript.broadcasts.size(); ++t) {
    const BroadcastRound& b = transcript.broadcasts[t];
    if (b.t != static_cast<int>(t)) {
      throw IncompleteTranscriptError("missing broadcast round " +
                                      std::to_string(t));
    }
    if (static_cast<int>(b.x.size()) != g.n()) {
      throw IncompleteTranscriptError("broadcast round " + std::to_string(t) +
                                      " does not cover every node");
    }
    history.push_back(z_round(g, history.back(), b.x, c, theta));
  }
  return history;
}

std::vector<LeakFinding> adversary_reconstruct(const Transcript& transcript,
                                               const Graph& g, double c,
                                               double theta) {
  const std::vector<ZState> history = track_z(transcript, g, c, theta);
  std::vector<LeakFinding> leaks;
  for (const BroadcastRound& b : transcript.broadcasts) {
    for (int i = 0; i < g.n(); ++i) {
      const DecisionInterval iv = decision_interval(i, history[b.t], g, c);
      const double x = b.x[i];
      if (iv.strictly_contains(x)) {
        leaks.push_back({i, b.t, x, false});
      } else if (x == iv.lo || x == iv.hi) {
        leaks.push_back({i, b.t, x, true});
      }
    }
  }
  return leaks;
}

PrivateData dp_perturb(const PrivateData& s, double sigma_dp, Rng& rng) {
  if (!(sigma_dp >= 0.0)) throw InvalidParameterError("sigma_dp must be >= 0");
  if (sigma_dp == 0.0) return s;
  std::normal_distribution<double> noise(0.0, sigma_dp);
  PrivateData out = s;
  for (double& v : out.values) v += noise(rng);
  return out;
}

}  // namespace medcon
