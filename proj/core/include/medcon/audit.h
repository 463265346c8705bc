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

#ifndef MEDCON_AUDIT_H_
#define MEDCON_AUDIT_H_

#include <optional>
#include <span>
#include <vector>

#include "medcon/graph.h"
#include "medcon/random.h"
#include "medcon/solver.h"

namespace medcon {

struct NodeAudit {
  bool secure = true;
  std::optional<int> first_violation;
  // Rounds t with s_i in [lo_i^(t), hi_i^(t)].
  std::vector<int> violation_rounds;
};

// Zero-leakage verdict per node: a node is secure iff its private value
// stays outside its closed decision interval in every executed round.
struct AuditReport {
  std::vector<NodeAudit> nodes;

  int secure_count() const;
};

AuditReport audit(const RunTrace& trace, const PrivateData& s);

// Secure nodes over all nodes (the median holder is counted too).
double secure_fraction(const AuditReport& report);

struct BroadcastRound {
  int t = 0;
  std::vector<double> x;
};

// What a colluding corrupt node contributes: its own data and its own z
// variables z_{j|k}^(t), k in neighbours(j) ascending, for every round.
struct CorruptNodeView {
  int node = 0;
  double s = 0.0;
  std::vector<std::vector<double>> z_history;
};

// The pooled view of an eavesdropper (every initial z message and every x
// broadcast) and a set of passive corrupt nodes.
struct Transcript {
  int n = 0;
  ZState initial_z;
  std::vector<BroadcastRound> broadcasts;
  std::vector<int> corrupt_set;  // sorted, unique
  std::vector<CorruptNodeView> corrupt_internals;
};

Transcript build_transcript(const RunTrace& trace, const Graph& g,
                            const PrivateData& s,
                            std::span<const int> corrupt_set);

// Replays the z recursion from the eavesdropped initial state and the x
// broadcasts. Returns z^(0) .. z^(k) for a transcript with k broadcast
// rounds. Throws IncompleteTranscriptError when rounds are missing, out of
// order or the wrong width.
std::vector<ZState> track_z(const Transcript& transcript, const Graph& g,
                            double c, double theta);

struct LeakFinding {
  int node = 0;
  int round = 0;
  double value = 0.0;
  // x sat exactly on an interval endpoint, so it may or may not be s_i.
  bool boundary_ambiguous = false;
};

// Recomputes each node's decision interval from the tracked z and flags
// broadcasts that land inside it. A broadcast strictly inside the interval
// can only come from the unclamped branch, so it is s_i exactly. Endpoint
// hits are reported with boundary_ambiguous set.
std::vector<LeakFinding> adversary_reconstruct(const Transcript& transcript,
                                               const Graph& g, double c,
                                               double theta);

// s_i + N(0, sigma_dp^2), one draw per node in node order.
PrivateData dp_perturb(const PrivateData& s, double sigma_dp, Rng& rng);

}  // namespace medcon

#endif  // MEDCON_AUDIT_H_
