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

#ifndef MEDCON_SOLVER_H_
#define MEDCON_SOLVER_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "medcon/graph.h"
#include "medcon/oracle.h"
#include "medcon/random.h"

namespace medcon {

// Per-node private measurements s_i.
struct PrivateData {
  std::vector<double> values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
  // Throws InvalidParameterError on a size mismatch or non-finite entry.
  void validate(int n) const;
};

struct SolverConfig {
  double c = 1.0;      // convergence parameter, > 0
  double theta = 0.5;  // averaging constant in (0, 1]; 1 is plain PDMM
  int t_max = 500;     // rounds executed at most
  double stop_tol = 1e-10;  // 0 disables early stopping
  int stop_patience = 5;

  void validate() const;
};

// Auxiliary variables z_{i|j}, one per directed edge in the graph's
// canonical directed-edge order (see Graph).
struct ZState {
  std::vector<double> values;

  double at(const Graph& g, int i, int j) const {
    return values[g.directed_index(i, j)];
  }
  friend bool operator==(const ZState&, const ZState&) = default;
};

// The window [lo, hi] that node i clamps s_i into during one round.
struct DecisionInterval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return lo <= v && v <= hi; }
  bool strictly_contains(double v) const { return lo < v && v < hi; }
  double width() const { return hi - lo; }
  friend bool operator==(const DecisionInterval&,
                         const DecisionInterval&) = default;
};

struct RoundRecord {
  int t = 0;
  std::vector<double> x;
  std::vector<DecisionInterval> intervals;
  ZState z;  // z^(t), the state x^(t) was computed from
};

enum class StopReason { kMaxRounds, kTolerance };

std::string_view to_string(StopReason reason);
StopReason stop_reason_from_string(std::string_view text);

// Everything the solver did in one run. rounds[t].t == t for every executed
// round; final_z is the state after the last round's z update.
struct RunTrace {
  SolverConfig config;
  int n = 0;
  std::uint64_t topology_hash = 0;
  ZState initial_z;
  std::vector<RoundRecord> rounds;
  ZState final_z;
  StopReason stop_reason = StopReason::kMaxRounds;

  int stopped_at() const { return static_cast<int>(rounds.size()) - 1; }
  const std::vector<double>& final_x() const { return rounds.back().x; }
};

// z_{i|j} ~ N(mu * incidence_sign(i, j), sigma^2), drawn in directed-edge
// order so that equal seeds give bit-identical states.
ZState init_z(const Graph& g, double mu, double sigma, Rng& rng);

// Sum over neighbours of incidence_sign(i, j) * z_{i|j}, accumulated in
// ascending neighbour order.
double signed_z_sum(int i, const ZState& z, const Graph& g);

// [(-1 - zsum) / (c d_i), (1 - zsum) / (c d_i)].
DecisionInterval decision_interval(int i, const ZState& z, const Graph& g,
                                   double c);

// Closed-form minimizer of |x - s_i| + zsum x + (c d_i / 2) x^2: s_i clamped
// into the interval. Returns s_i itself (bitwise) when it lies inside.
double x_update(double s_i, const DecisionInterval& iv);

// One synchronous z update over every directed edge:
//   z_{j|i} <- (1 - theta) z_{j|i} + theta (z_{i|j} + 2 c A_ij x_i)
// with all right-hand sides read from the old state.
ZState z_round(const Graph& g, const ZState& z, std::span<const double> x,
               double c, double theta);

struct SolverState {
  ZState z;
  RunTrace trace;
};

// Fresh state positioned before round 0.
SolverState start(const Graph& g, const SolverConfig& cfg, ZState z0);

// Computes every node's interval and x from state.z, appends the round
// record, then applies z_round once. Throws NumericFailureError if any
// produced value is not finite.
void step(SolverState& state, const Graph& g, const PrivateData& s,
          const SolverConfig& cfg);

// Runs step() until cfg.t_max rounds have executed, or until the largest
// change in any x_i or z_{i|j} between successive rounds stays below
// cfg.stop_tol for cfg.stop_patience consecutive rounds.
RunTrace run(const Graph& g, const PrivateData& s, const SolverConfig& cfg,
             ZState z0);

// Euclidean norm of the per-node distances to the median interval.
double convergence_error(std::span<const double> x,
                         const MedianInterval& target);

}  // namespace medcon

#endif  // MEDCON_SOLVER_H_
