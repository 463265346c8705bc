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

#ifndef MEDCON_HARNESS_H_
#define MEDCON_HARNESS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "medcon/audit.h"
#include "medcon/graph.h"
#include "medcon/solver.h"
#include "medcon/trace_checks.h"

namespace medcon {

enum class Topology { kRing, kComplete, kRgg };

std::string_view to_string(Topology t);
Topology topology_from_string(std::string_view text);

struct ScenarioConfig {
  Topology topology = Topology::kRgg;
  int n = 5;
  double rgg_radius = 0.0;  // 0 selects default_rgg_radius(n)
  int rgg_max_retries = 100;
  // Used instead of `topology` when set (e.g. loaded from an edge list).
  std::optional<Graph> fixed_graph;
  // Drawn i.i.d. standard normal per trial when unset.
  std::optional<std::vector<double>> fixed_s;
  double mu = 0.0;
  double sigma = 0.1;
  SolverConfig solver;
  double dp_sigma = 0.0;  // 0 disables the input offset
  int trials = 1;
  std::uint64_t master_seed = 0;

  void validate() const;
  int node_count() const { return fixed_graph ? fixed_graph->n() : n; }
};

// splitmix64-based mix of (master_seed, trial, FNV-1a(stream)). Injective in
// `trial` for fixed master seed and stream.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial,
                          std::string_view stream);

// One complete trial: graph, data, initial z, optional input offset, run,
// audit and adversary reconstruction under the eavesdropper view.
struct TrialOutcome {
  int trial = 0;
  Graph graph;
  PrivateData s;       // the true private values
  PrivateData s_used;  // what the solver ran on (s plus the dp offset)
  RunTrace trace;
  AuditReport audit;   // against s_used
  std::vector<LeakFinding> leaks;

  // Node holding the (lower) median of s_used; lowest id on ties.
  int median_holder() const;
  double final_consensus() const;  // mean of the final x
};

// Reconstruction is skipped when `reconstruct` is false (sweeps).
TrialOutcome run_trial(const ScenarioConfig& cfg, int trial,
                       bool reconstruct = true);

// 5-node RGG, z^(0) ~ N(0, 1e-2): every node starts near the median.
ScenarioConfig near_median_config(std::uint64_t seed = 0);
// 5-node RGG, z^(0) ~ N(-10 A_ij, 1): x starts far above the data. With
// dp, inputs are offset by N(0, 1e-2) before the run.
ScenarioConfig biased_init_config(bool dp, std::uint64_t seed = 0);

TrialOutcome scenario_near_median(const ScenarioConfig& cfg);
TrialOutcome scenario_biased_init(const ScenarioConfig& cfg);

struct TrialRow {
  std::string cell_label;
  int trial = 0;
  int secure_count = 0;
  int n = 0;
  double secure_fraction = 0.0;
  double final_error = 0.0;
  int rounds_executed = 0;
};

struct SweepCell {
  std::string label;
  double mean_secure_fraction = 0.0;
  double std_secure_fraction = 0.0;  // sample standard deviation
  double mean_final_error = 0.0;
  int trials = 0;

  double standard_error() const;
};

struct SweepResult {
  std::vector<SweepCell> cells;
  std::vector<TrialRow> rows;  // cell order, then trial id
  // Accumulated over the sampled trials (every tenth).
  TraceCheckReport checks;
};

// Aggregates rows sharing a label; order-insensitive within a cell.
SweepCell aggregate(std::string label, const std::vector<TrialRow>& rows);

// n = 15, 100 trials, c = 1, z^(0) ~ N(0, 1e-2).
ScenarioConfig sweep_topology_config(std::uint64_t seed = 0);
// As above on the RGG topology.
ScenarioConfig sweep_c_config(std::uint64_t seed = 0);
std::vector<double> default_c_values();

// Cells ring, rgg, complete. cfg.topology and cfg.fixed_graph are ignored.
SweepResult sweep_topology(const ScenarioConfig& cfg, int workers = 1);
// One cell per c value on cfg's topology.
SweepResult sweep_c(const std::vector<double>& values,
                    const ScenarioConfig& cfg, int workers = 1);

}  // namespace medcon

#endif  // MEDCON_HARNESS_H_
