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

#include "medcon/trace_checks.h"

#include <algorithm>
#include <bit>
#include <cmath>

namespace medcon {

TraceCheckReport& TraceCheckReport::operator+=(const TraceCheckReport& o) {
  branch_checked += o.branch_checked;
  branch_mismatches += o.branch_mismatches;
  width_checked += o.width_checked;
  width_violations += o.width_violations;
  max_width_rel_err = std::max(max_width_rel_err, o.max_width_rel_err);
  z_diff_checked += o.z_diff_checked;
  z_diff_violations += o.z_diff_violations;
  max_z_diff_rel_err = std::max(max_z_diff_rel_err, o.max_z_diff_rel_err);
  residual_checked += o.residual_checked;
  residual_violations += o.residual_violations;
  max_residual_err = std::max(max_residual_err, o.max_residual_err);
  return *this;
}

namespace {

bool bit_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

}  // namespace

TraceCheckReport check_trace(const RunTrace& trace, const Graph& g,
                             const PrivateData& s) {
  TraceCheckReport rep;
  const double c = trace.config.c;
  const int n = g.n();
  const auto& rounds = trace.rounds;

  for (const RoundRecord& r : rounds) {
    for (int i = 0; i < n; ++i) {
      const DecisionInterval& iv = r.intervals[i];
      ++rep.branch_checked;
      if (bit_equal(r.x[i], s[i]) != iv.contains(s[i])) ++rep.branch_mismatches;

      const double expected = 2.0 / (c * g.degree(i));
      const double rel = std::abs(iv.width() - expected) / expected;
      ++rep.width_checked;
      rep.max_width_rel_err = std::max(rep.max_width_rel_err, rel);
      if (!(rel <= kWidthRelTol)) ++rep.width_violations;
    }
  }

  if (trace.config.theta != 0.5) return rep;

  auto z_at = [&](std::size_t t) -> const ZState& {
    return t < rounds.size() ? rounds[t].z : trace.final_z;
  };

  for (std::size_t t = 1; t < rounds.size(); ++t) {
    const ZState& z_next = z_at(t + 1);
    const ZState& z_cur = rounds[t].z;
    const auto& x = rounds[t].x;
    const auto& x_prev = rounds[t - 1].x;
    // Directed edge e = (j|i).
    for (std::size_t e = 0; e < g.num_directed_edges(); ++e) {
      const int j = g.source(e);
      const int i = g.target(e);
      const double lhs = z_next.values[e] - z_cur.values[e];
      const double rhs = c * incidence_sign(i, j) *
                         (x[i] - 0.5 * x_prev[i] - 0.5 * x_prev[j]);
      const double scale = std::max(
          {1.0, std::abs(z_next.values[e]), std::abs(z_cur.values[e])});
      const double rel = std::abs(lhs - rhs) / scale;
      ++rep.z_diff_checked;
      rep.max_z_diff_rel_err = std::max(rep.max_z_diff_rel_err, rel);
      if (!(rel <= kZDiffRelTol)) ++rep.z_diff_violations;
    }
  }

  auto clamped = [&](std::size_t t, int j) {
    return !bit_equal(rounds[t].x[j], s[j]);
  };
  for (std::size_t t = 1; t + 1 < rounds.size(); ++t) {
    for (int j = 0; j < n; ++j) {
      if (!clamped(t - 1, j) || !clamped(t, j) || !clamped(t + 1, j)) continue;
      const auto& xm = rounds[t - 1].x;
      const auto& x0 = rounds[t].x;
      const auto& xp = rounds[t + 1].x;
      double drift = 0.0;
      for (int k : g.neighbors(j)) drift += x0[k] - 0.5 * xm[k] - 0.5 * xm[j];
      const int d = g.degree(j);
      const double residual = xp[j] - x0[j] - drift / d;
      const double jump = 2.0 / (c * d);
      const double err = std::min({std::abs(residual), std::abs(residual - jump),
                                   std::abs(residual + jump)});
      ++rep.residual_checked;
      rep.max_residual_err = std::max(rep.max_residual_err, err);
      if (!(err <= kResidualAbsTol)) ++rep.residual_violations;
    }
  }
  return rep;
}

}  // namespace medcon
