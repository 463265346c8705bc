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

#include "medcon/harness.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "medcon/error.h"
#include "medcon/format.h"
#include "medcon/oracle.h"

namespace medcon {

std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::kRing:
      return "ring";
    case Topology::kComplete:
      return "complete";
    case Topology::kRgg:
      return "rgg";
  }
  return "rgg";
}

Topology topology_from_string(std::string_view text) {
  if (text == "ring") return Topology::kRing;
  if (text == "complete") return Topology::kComplete;
  if (text == "rgg") return Topology::kRgg;
  throw InvalidParameterError("unknown topology '" + std::string(text) +
                              "' (expected ring, complete or rgg)");
}

void ScenarioConfig::validate() const {
  solver.validate();
  if (!fixed_graph && n < 2) throw InvalidParameterError("n must be >= 2");
  if (!(sigma >= 0.0)) throw InvalidParameterError("sigma must be >= 0");
  if (!(dp_sigma >= 0.0)) throw InvalidParameterError("dp_sigma must be >= 0");
  if (trials < 1) throw InvalidParameterError("trials must be >= 1");
  if (rgg_max_retries < 1) {
    throw InvalidParameterError("rgg max_retries must be >= 1");
  }
  if (fixed_s && static_cast<int>(fixed_s->size()) != node_count()) {
    throw InvalidParameterError("fixed s has " +
                                std::to_string(fixed_s->size()) +
                                " values for " +
                                std::to_string(node_count()) + " nodes");
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

Graph make_graph(const ScenarioConfig& cfg, Rng& rng) {
  if (cfg.fixed_graph) return *cfg.fixed_graph;
  switch (cfg.topology) {
    case Topology::kRing:
      return ring(cfg.n);
    case Topology::kComplete:
      return complete(cfg.n);
    case Topology::kRgg: {
      RggParams params{cfg.n,
                       cfg.rgg_radius > 0.0 ? cfg.rgg_radius
                                            : default_rgg_radius(cfg.n),
                       cfg.rgg_max_retries};
      return rgg(params, rng);
    }
  }
  throw InvalidParameterError("unknown topology");
}

// Runs fn(k) for k in [0, count) on up to `workers` threads. The first
// exception thrown by any task is rethrown after all threads join.
template <typename Fn>
void parallel_for(int count, int workers, Fn&& fn) {
  workers = std::clamp(workers, 1, std::max(count, 1));
  if (workers == 1) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int k = next++; k < count; k = next++) {
          try {
            fn(k);
          } catch (...) {
            std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

SweepResult run_cells(const std::vector<std::pair<std::string, ScenarioConfig>>&
                          cells,
                      int workers) {
  const int trials = cells.empty() ? 0 : cells.front().second.trials;
  const int total = static_cast<int>(cells.size()) * trials;
  std::vector<TrialRow> rows(total);
  std::vector<TraceCheckReport> checks(total);
  parallel_for(total, workers, [&](int k) {
    const auto& [label, cfg] = cells[k / trials];
    const int trial = k % trials;
    TrialOutcome out = run_trial(cfg, trial, /*reconstruct=*/false);
    TrialRow& row = rows[k];
    row.cell_label = label;
    row.trial = trial;
    row.n = out.graph.n();
    row.secure_count = out.audit.secure_count();
    row.secure_fraction = secure_fraction(out.audit);
    row.final_error =
        convergence_error(out.trace.final_x(), median_interval(out.s.values));
    row.rounds_executed = static_cast<int>(out.trace.rounds.size());
    if (trial % 10 == 0) checks[k] = check_trace(out.trace, out.graph, out.s_used);
  });

  SweepResult result;
  for (int cell = 0; cell < static_cast<int>(cells.size()); ++cell) {
    std::vector<TrialRow> cell_rows(rows.begin() + cell * trials,
                                    rows.begin() + (cell + 1) * trials);
    result.cells.push_back(aggregate(cells[cell].first, cell_rows));
  }
  for (const TraceCheckReport& c : checks) result.checks += c;
  result.rows = std::move(rows);
  return result;
}

}  // namespace

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t trial,
                          std::string_view stream) {
  const std::uint64_t base = splitmix64(master_seed ^ splitmix64(fnv1a(stream)));
  return splitmix64(base + trial);
}

int TrialOutcome::median_holder() const {
  const MedianInterval m = median_interval(s_used.values);
  for (std::size_t i = 0; i < s_used.size(); ++i) {
    if (s_used[i] == m.lo) return static_cast<int>(i);
  }
  return 0;
}

double TrialOutcome::final_consensus() const {
  const auto& x = trace.final_x();
  return std::accumulate(x.begin(), x.end(), 0.0) / x.size();
}

TrialOutcome run_trial(const ScenarioConfig& cfg, int trial, bool reconstruct) {
  cfg.validate();
  const auto seed = [&](std::string_view stream) {
    return derive_seed(cfg.master_seed, static_cast<std::uint64_t>(trial),
                       stream);
  };
  Rng graph_rng = make_rng(seed("graph"));
  Rng data_rng = make_rng(seed("data"));
  Rng z_rng = make_rng(seed("zinit"));
  Rng dp_rng = make_rng(seed("dp"));

  TrialOutcome out;
  out.trial = trial;
  out.graph = make_graph(cfg, graph_rng);
  if (cfg.fixed_s) {
    out.s.values = *cfg.fixed_s;
  } else {
    std::normal_distribution<double> standard(0.0, 1.0);
    out.s.values.resize(out.graph.n());
    for (double& v : out.s.values) v = standard(data_rng);
  }
  ZState z0 = init_z(out.graph, cfg.mu, cfg.sigma, z_rng);
  out.s_used = dp_perturb(out.s, cfg.dp_sigma, dp_rng);
  out.trace = run(out.graph, out.s_used, cfg.solver, std::move(z0));
  out.audit = audit(out.trace, out.s_used);
  if (reconstruct) {
    const Transcript eavesdropped =
        build_transcript(out.trace, out.graph, out.s_used, {});
    out.leaks = adversary_reconstruct(eavesdropped, out.graph, cfg.solver.c,
                                      cfg.solver.theta);
  }
  return out;
}

ScenarioConfig near_median_config(std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.topology = Topology::kRgg;
  cfg.n = 5;
  cfg.mu = 0.0;
  cfg.sigma = 0.1;
  cfg.master_seed = seed;
  return cfg;
}

ScenarioConfig biased_init_config(bool dp, std::uint64_t seed) {
  ScenarioConfig cfg = near_median_config(seed);
  cfg.mu = -10.0;
  cfg.sigma = 1.0;
  cfg.dp_sigma = dp ? 0.1 : 0.0;
  return cfg;
}

TrialOutcome scenario_near_median(const ScenarioConfig& cfg) {
  return run_trial(cfg, 0);
}

TrialOutcome scenario_biased_init(const ScenarioConfig& cfg) {
  return run_trial(cfg, 0);
}

double SweepCell::standard_error() const {
  return trials > 0 ? std_secure_fraction / std::sqrt(trials) : 0.0;
}

SweepCell aggregate(std::string label, const std::vector<TrialRow>& rows) {
  SweepCell cell;
  cell.label = std::move(label);
  cell.trials = static_cast<int>(rows.size());
  if (rows.empty()) return cell;
  // Sum in trial order so the result does not depend on row order.
  std::vector<const TrialRow*> sorted;
  for (const TrialRow& r : rows) sorted.push_back(&r);
  std::sort(sorted.begin(), sorted.end(),
            [](const TrialRow* a, const TrialRow* b) { return a->trial < b->trial; });
  double sum = 0.0, err = 0.0;
  for (const TrialRow* r : sorted) {
    sum += r->secure_fraction;
    err += r->final_error;
  }
  cell.mean_secure_fraction = sum / cell.trials;
  cell.mean_final_error = err / cell.trials;
  if (cell.trials > 1) {
    double ss = 0.0;
    for (const TrialRow* r : sorted) {
      const double d = r->secure_fraction - cell.mean_secure_fraction;
      ss += d * d;
    }
    cell.std_secure_fraction = std::sqrt(ss / (cell.trials - 1));
  }
  return cell;
}

ScenarioConfig sweep_topology_config(std::uint64_t seed) {
  ScenarioConfig cfg;
  cfg.n = 15;
  cfg.trials = 100;
  cfg.mu = 0.0;
  cfg.sigma = 0.1;
  cfg.master_seed = seed;
  return cfg;
}

ScenarioConfig sweep_c_config(std::uint64_t seed) {
  ScenarioConfig cfg = sweep_topology_config(seed);
  cfg.topology = Topology::kRgg;
  return cfg;
}

std::vector<double> default_c_values() { return {0.2, 0.5, 1.0, 2.0, 5.0}; }

SweepResult sweep_topology(const ScenarioConfig& cfg, int workers) {
  cfg.validate();
  std::vector<std::pair<std::string, ScenarioConfig>> cells;
  for (Topology t : {Topology::kRing, Topology::kRgg, Topology::kComplete}) {
    ScenarioConfig cell = cfg;
    cell.fixed_graph.reset();
    cell.topology = t;
    cells.emplace_back(std::string(to_string(t)), std::move(cell));
  }
  return run_cells(cells, workers);
}

SweepResult sweep_c(const std::vector<double>& values,
                    const ScenarioConfig& cfg, int workers) {
  if (values.empty()) throw InvalidParameterError("sweep_c: no c values");
  cfg.validate();
  std::vector<std::pair<std::string, ScenarioConfig>> cells;
  for (double c : values) {
    if (!(c > 0.0)) {
      throw InvalidParameterError("sweep_c: c values must be positive");
    }
    ScenarioConfig cell = cfg;
    cell.solver.c = c;
    cells.emplace_back(format_double(c), std::move(cell));
  }
  return run_cells(cells, workers);
}

}  // namespace medcon
