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

#include "medcon/solver.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "medcon/error.h"

namespace medcon {

void PrivateData::validate(int n) const {
  if (static_cast<int>(values.size()) != n) {
    throw InvalidParameterError("private data has " +
                                std::to_string(values.size()) +
                                " values for " + std::to_string(n) + " nodes");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw InvalidParameterError("private value of node " +
                                  std::to_string(i) + " is not finite");
    }
  }
}

void SolverConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw InvalidParameterError("c must be positive and finite");
  }
  if (!(theta > 0.0 && theta <= 1.0)) {
    throw InvalidParameterError("theta must lie in (0, 1]");
  }
  if (t_max < 1) throw InvalidParameterError("t_max must be >= 1");
  if (!(stop_tol >= 0.0)) throw InvalidParameterError("stop_tol must be >= 0");
  if (stop_patience < 1) {
    throw InvalidParameterError("stop_patience must be >= 1");
  }
}

std::string_view to_string(StopReason reason) {
  return reason == StopReason::kTolerance ? "tolerance" : "t_max";
}

StopReason stop_reason_from_string(std::string_view text) {
  if (text == "tolerance") return StopReason::kTolerance;
  if (text == "t_max") return StopReason::kMaxRounds;
  throw ParseError("unknown stop reason '" + std::string(text) + "'");
}

ZState init_z(const Graph& g, double mu, double sigma, Rng& rng) {
  if (!(sigma >= 0.0)) throw InvalidParameterError("sigma must be >= 0");
  ZState z;
  z.values.resize(g.num_directed_edges());
  if (sigma == 0.0) {
    for (std::size_t e = 0; e < z.values.size(); ++e) {
      z.values[e] = mu * incidence_sign(g.source(e), g.target(e));
    }
    return z;
  }
  std::normal_distribution<double> noise(0.0, sigma);
  for (std::size_t e = 0; e < z.values.size(); ++e) {
    z.values[e] = mu * incidence_sign(g.source(e), g.target(e)) + noise(rng);
  }
  return z;
}

double signed_z_sum(int i, const ZState& z, const Graph& g) {
  double sum = 0.0;
  for (std::size_t e = g.out_begin(i); e < g.out_end(i); ++e) {
    sum += incidence_sign(i, g.target(e)) * z.values[e];
  }
  return sum;
}

DecisionInterval decision_interval(int i, const ZState& z, const Graph& g,
                                   double c) {
  const double zsum = signed_z_sum(i, z, g);
  const double scale = c * g.degree(i);
  return {(-1.0 - zsum) / scale, (1.0 - zsum) / scale};
}

double x_update(double s_i, const DecisionInterval& iv) {
  if (iv.lo > s_i) return iv.lo;
  if (iv.hi < s_i) return iv.hi;
  return s_i;
}

ZState z_round(const Graph& g, const ZState& z, std::span<const double> x,
               double c, double theta) {
  ZState next;
  next.values.resize(z.values.size());
  // Directed edge e = (j|i) receives node i's broadcast; rev = (i|j).
  for (std::size_t e = 0; e < z.values.size(); ++e) {
    const int j = g.source(e);
    const int i = g.target(e);
    const std::size_t rev = g.reverse(e);
    const double y = z.values[rev] + 2.0 * c * incidence_sign(i, j) * x[i];
    next.values[e] = (1.0 - theta) * z.values[e] + theta * y;
  }
  return next;
}

SolverState start(const Graph& g, const SolverConfig& cfg, ZState z0) {
  if (z0.values.size() != g.num_directed_edges()) {
    throw InvalidParameterError("initial z has " +
                                std::to_string(z0.values.size()) +
                                " entries, graph has " +
                                std::to_string(g.num_directed_edges()) +
                                " directed edges");
  }
  SolverState state;
  state.trace.config = cfg;
  state.trace.n = g.n();
  state.trace.topology_hash = topology_hash(g);
  state.trace.initial_z = z0;
  state.trace.final_z = z0;
  state.z = std::move(z0);
  return state;
}

void step(SolverState& state, const Graph& g, const PrivateData& s,
          const SolverConfig& cfg) {
  const int n = g.n();
  const int t = static_cast<int>(state.trace.rounds.size());
  RoundRecord rec;
  rec.t = t;
  rec.x.resize(n);
  rec.intervals.resize(n);
  for (int i = 0; i < n; ++i) {
    rec.intervals[i] = decision_interval(i, state.z, g, cfg.c);
    rec.x[i] = x_update(s[i], rec.intervals[i]);
    if (!std::isfinite(rec.intervals[i].lo) ||
        !std::isfinite(rec.intervals[i].hi)) {
      throw NumericFailureError("non-finite decision interval at round " +
                                    std::to_string(t) + ", node " +
                                    std::to_string(i),
                                t, i);
    }
  }
  ZState next = z_round(g, state.z, rec.x, cfg.c, cfg.theta);
  for (std::size_t e = 0; e < next.values.size(); ++e) {
    if (!std::isfinite(next.values[e])) {
      throw NumericFailureError("non-finite z at round " + std::to_string(t) +
                                    ", node " + std::to_string(g.source(e)),
                                t, g.source(e));
    }
  }
  rec.z = std::move(state.z);
  state.trace.rounds.push_back(std::move(rec));
  state.z = std::move(next);
  state.trace.final_z = state.z;
}

RunTrace run(const Graph& g, const PrivateData& s, const SolverConfig& cfg,
             ZState z0) {
  cfg.validate();
  if (g.n() < 2) throw InvalidParameterError("run: graph needs >= 2 nodes");
  if (!is_connected(g)) throw InvalidParameterError("run: graph is disconnected");
  s.validate(g.n());

  SolverState state = start(g, cfg, std::move(z0));
  int quiet = 0;
  while (static_cast<int>(state.trace.rounds.size()) < cfg.t_max) {
    step(state, g, s, cfg);
    const auto& rounds = state.trace.rounds;
    if (rounds.size() < 2) continue;
    // x alone can sit still for several rounds while z is still drifting
    // (nodes parked on their own s_i), so the z change must be quiet too.
    const auto& cur = rounds.back().x;
    const auto& prev = rounds[rounds.size() - 2].x;
    double change = 0.0;
    for (int i = 0; i < g.n(); ++i) {
      change = std::max(change, std::abs(cur[i] - prev[i]));
    }
    const auto& z_prev = rounds.back().z.values;
    for (std::size_t e = 0; e < z_prev.size(); ++e) {
      change = std::max(change, std::abs(state.z.values[e] - z_prev[e]));
    }
    quiet = change < cfg.stop_tol ? quiet + 1 : 0;
    if (quiet >= cfg.stop_patience) {
      state.trace.stop_reason = StopReason::kTolerance;
      return std::move(state.trace);
    }
  }
  state.trace.stop_reason = StopReason::kMaxRounds;
  return std::move(state.trace);
}

double convergence_error(std::span<const double> x,
                         const MedianInterval& target) {
  double sq = 0.0;
  for (double v : x) {
    const double d = target.distance(v);
    sq += d * d;
  }
  return std::sqrt(sq);
}

}  // namespace medcon
