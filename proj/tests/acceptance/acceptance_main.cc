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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Tolerances are fixed below.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.h"
#include "medcon/medcon.h"

namespace {

using namespace medcon;
namespace fs = std::filesystem;

constexpr double kProxTol = 2e-4;
constexpr double kProxStep = 1e-4;
constexpr double kConsensusTol = 1e-6;
constexpr int kConsensusTMax = 500;
constexpr double kFig1MaxMeanInsecure = 2.0;
constexpr int kFig2MinExact = 90;
constexpr int kFig2MinDeviating = 95;
// A dp run "deviates" when its consensus is further than this from the true
// median; far above the solver's own residual at the stopping tolerance.
constexpr double kDeviationFloor = 1e-6;
constexpr std::uint64_t kSeed = 0;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

bool bit_equal(double a, double b) {
  return std::bit_cast<std::uint64_t>(a) == std::bit_cast<std::uint64_t>(b);
}

// Traces pooled for the verdict and identity checks.
struct TracedRun {
  RunTrace trace;
  Graph graph;
  PrivateData s;
};
std::vector<TracedRun> g_traces;

void keep(const RunTrace& trace, const Graph& g, const PrivateData& s) {
  g_traces.push_back({trace, g, s});
}

Outcome prox_equivalence() {
  Rng rng = make_rng(derive_seed(kSeed, 0, "accept-prox"));
  std::uniform_real_distribution<double> unit5(-5.0, 5.0);
  std::uniform_real_distribution<double> log_c(std::log(0.1), std::log(10.0));
  std::uniform_int_distribution<int> degree(1, 10);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double s = unit5(rng);
    const double zsum = unit5(rng);
    const double c = std::exp(log_c(rng));
    const int d = degree(rng);
    const double cd = c * d;
    const double x = x_update(s, DecisionInterval{(-1.0 - zsum) / cd,
                                                  (1.0 - zsum) / cd});
    const double grid = prox_grid_argmin(s, zsum, c, d, kProxStep);
    worst = std::max(worst, std::abs(x - grid));
  }
  return {worst <= kProxTol,
          "1000 instances, max |x - grid argmin| = " + fmt("%.3g", worst) +
              " (tol 2e-4)"};
}

struct ConsensusCase {
  Graph graph;
  PrivateData s;
  ZState z0;
};

ConsensusCase consensus_case(int n, std::uint64_t k) {
  Rng rng = make_rng(derive_seed(kSeed, k, "accept-consensus"));
  ConsensusCase out;
  out.graph = rgg(RggParams::with_default_radius(n), rng);
  std::normal_distribution<double> standard(0.0, 1.0);
  for (int i = 0; i < n; ++i) out.s.values.push_back(standard(rng));
  out.z0 = init_z(out.graph, 0.0, k % 2 == 0 ? 0.0 : 0.1, rng);
  return out;
}

Outcome consensus_correctness() {
  SolverConfig cfg;
  cfg.c = 1.0;
  cfg.theta = 0.5;
  cfg.t_max = kConsensusTMax;
  const int odd[] = {3, 5, 7, 9, 11, 13, 15};
  const int even[] = {4, 6, 8, 10, 12, 14};
  int odd_ok = 0, even_ok = 0;
  double worst = 0.0;
  for (std::uint64_t k = 0; k < 50; ++k) {
    ConsensusCase cc = consensus_case(odd[k % 7], k);
    RunTrace tr = run(cc.graph, cc.s, cfg, cc.z0);
    const double err = convergence_error(tr.final_x(), median_interval(cc.s.values));
    worst = std::max(worst, err);
    odd_ok += err <= kConsensusTol;
    keep(tr, cc.graph, cc.s);
  }
  for (std::uint64_t k = 50; k < 70; ++k) {
    ConsensusCase cc = consensus_case(even[k % 6], k);
    RunTrace tr = run(cc.graph, cc.s, cfg, cc.z0);
    const double err = convergence_error(tr.final_x(), median_interval(cc.s.values));
    worst = std::max(worst, err);
    even_ok += err <= kConsensusTol;
    keep(tr, cc.graph, cc.s);
  }
  return {odd_ok == 50 && even_ok == 20,
          "within 1e-6 by t=500: odd n " + std::to_string(odd_ok) +
              "/50, even n " + std::to_string(even_ok) +
              "/20; worst error " + fmt("%.3g", worst)};
}

std::vector<TrialOutcome> g_fig1, g_fig2, g_fig2_dp;

void run_scenarios() {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    g_fig1.push_back(scenario_near_median(near_median_config(seed)));
    g_fig2.push_back(scenario_biased_init(biased_init_config(false, seed)));
    g_fig2_dp.push_back(scenario_biased_init(biased_init_config(true, seed)));
  }
  for (const auto* set : {&g_fig1, &g_fig2, &g_fig2_dp}) {
    for (const TrialOutcome& o : *set) keep(o.trace, o.graph, o.s_used);
  }
  const auto sweep_traces = [](ScenarioConfig cfg) {
    for (int t = 0; t < cfg.trials; ++t) {
      TrialOutcome o = run_trial(cfg, t, /*reconstruct=*/false);
      keep(o.trace, o.graph, o.s_used);
    }
  };
  for (Topology top : {Topology::kRing, Topology::kRgg, Topology::kComplete}) {
    ScenarioConfig cfg = sweep_topology_config(kSeed);
    cfg.topology = top;
    sweep_traces(cfg);
  }
  for (double c : default_c_values()) {
    ScenarioConfig cfg = sweep_c_config(kSeed);
    cfg.solver.c = c;
    sweep_traces(cfg);
  }
}

Outcome verdict_equivalence() {
  std::int64_t checked = 0, discrepancies = 0;
  for (const TracedRun& r : g_traces) {
    const AuditReport rep = audit(r.trace, r.s);
    for (int i = 0; i < r.graph.n(); ++i) {
      bool hit = false;
      for (const RoundRecord& rr : r.trace.rounds) {
        const bool in = rr.intervals[i].contains(r.s[i]);
        const bool equal = bit_equal(rr.x[i], r.s[i]);
        discrepancies += in != equal;
        hit |= equal;
        ++checked;
      }
      discrepancies += rep.nodes[i].secure == hit;
    }
  }
  return {discrepancies == 0 && checked > 0,
          std::to_string(g_traces.size()) + " traces, " +
              std::to_string(checked) + " node-rounds, " +
              std::to_string(discrepancies) + " discrepancies"};
}

Outcome trace_identities() {
  TraceCheckReport total;
  for (const TracedRun& r : g_traces) total += check_trace(r.trace, r.graph, r.s);
  std::ostringstream os;
  os << "z-diff " << total.z_diff_violations << "/" << total.z_diff_checked
     << " bad (max rel " << fmt("%.2g", total.max_z_diff_rel_err)
     << "); residual " << total.residual_violations << "/"
     << total.residual_checked << " bad (max " << fmt("%.2g", total.max_residual_err)
     << "); width " << total.width_violations << "/" << total.width_checked
     << " bad (max rel " << fmt("%.2g", total.max_width_rel_err) << ")";
  return {total.ok() && total.z_diff_checked > 0 && total.residual_checked > 0,
          os.str()};
}

Outcome adversary_reconstruction() {
  int value_mismatch = 0, z_mismatch = 0;
  std::int64_t findings = 0;
  for (std::uint64_t k = 0; k < 100; ++k) {
    ScenarioConfig cfg;
    cfg.master_seed = derive_seed(kSeed, k, "accept-adversary");
    cfg.n = 3 + static_cast<int>(k % 13);
    cfg.mu = (k % 4 == 0) ? -10.0 : 0.0;
    cfg.sigma = (k % 4 == 0) ? 1.0 : 0.1;
    TrialOutcome o = run_trial(cfg, 0);
    for (const LeakFinding& f : o.leaks) {
      if (f.boundary_ambiguous) continue;
      ++findings;
      value_mismatch += !bit_equal(f.value, o.s_used[f.node]);
    }
    const Transcript tr = build_transcript(o.trace, o.graph, o.s_used, {});
    const std::vector<ZState> zs =
        track_z(tr, o.graph, cfg.solver.c, cfg.solver.theta);
    const auto& rounds = o.trace.rounds;
    if (zs.size() != rounds.size() + 1) {
      ++z_mismatch;
      continue;
    }
    for (std::size_t t = 0; t < rounds.size(); ++t) {
      z_mismatch += !(zs[t] == rounds[t].z);
    }
    z_mismatch += !(zs.back() == o.trace.final_z);
  }
  return {value_mismatch == 0 && z_mismatch == 0 && findings > 0,
          "100 runs, " + std::to_string(findings) + " exact findings, " +
              std::to_string(value_mismatch) + " wrong values, " +
              std::to_string(z_mismatch) + " z-state mismatches"};
}

Outcome fig1_reproduction() {
  int holder_insecure = 0, insecure_total = 0;
  for (const TrialOutcome& o : g_fig1) {
    holder_insecure += !o.audit.nodes[o.median_holder()].secure;
    insecure_total += o.graph.n() - o.audit.secure_count();
  }
  const double mean = insecure_total / 100.0;
  return {holder_insecure == 100 && mean <= kFig1MaxMeanInsecure,
          "median holder insecure " + std::to_string(holder_insecure) +
              "/100; mean insecure nodes " + fmt("%.2f", mean) + " (max 2)"};
}

Outcome fig2_reproduction() {
  int exact = 0;
  for (const TrialOutcome& o : g_fig2) {
    const double m = median_interval(o.s.values).lo;
    bool match = true;
    for (int i = 0; i < o.graph.n(); ++i) {
      match &= o.audit.nodes[i].secure == (o.s[i] < m);
    }
    exact += match;
  }
  int wrong_leaks = 0, deviating = 0;
  for (const TrialOutcome& o : g_fig2_dp) {
    for (const LeakFinding& f : o.leaks) {
      if (!f.boundary_ambiguous && !bit_equal(f.value, o.s_used[f.node])) {
        ++wrong_leaks;
      }
    }
    const double truth = median_interval(o.s.values).lo;
    deviating += std::abs(o.final_consensus() - truth) > kDeviationFloor;
  }
  return {exact >= kFig2MinExact && wrong_leaks == 0 &&
              deviating >= kFig2MinDeviating,
          "secure set == below-median nodes in " + std::to_string(exact) +
              "/100 (min 90); dp: " + std::to_string(wrong_leaks) +
              " leaks differ from the perturbed value, consensus off the "
              "true median in " +
              std::to_string(deviating) + "/100 (min 95)"};
}

std::string ordering_detail(const SweepResult& res) {
  std::string out;
  for (const SweepCell& c : res.cells) {
    out += c.label + " " + fmt("%.3f", c.mean_secure_fraction) + "+-" +
           fmt("%.3f", c.standard_error()) + " ";
  }
  return out;
}

// b - a > -1 combined standard error.
bool not_below(const SweepCell& a, const SweepCell& b) {
  const double se = std::hypot(a.standard_error(), b.standard_error());
  return b.mean_secure_fraction - a.mean_secure_fraction > -se;
}

Outcome topology_ordering() {
  ScenarioConfig cfg = sweep_topology_config(kSeed);
  const SweepResult res = sweep_topology(cfg, 4);
  const bool ok = cfg.n == 15 && cfg.trials == 100 && cfg.solver.c == 1.0 &&
                  not_below(res.cells[0], res.cells[1]) &&
                  not_below(res.cells[1], res.cells[2]);
  return {ok, ordering_detail(res)};
}

Outcome c_ordering() {
  ScenarioConfig cfg = sweep_c_config(kSeed);
  const SweepResult res = sweep_c(default_c_values(), cfg, 4);
  bool ok = cfg.n == 15 && cfg.trials == 100 && cfg.topology == Topology::kRgg;
  for (std::size_t k = 0; k + 1 < res.cells.size(); ++k) {
    ok &= not_below(res.cells[k], res.cells[k + 1]);
  }
  ok &= res.cells.back().mean_secure_fraction >
        res.cells.front().mean_secure_fraction;
  return {ok, ordering_detail(res)};
}

Outcome theta_one_diverges() {
  SolverConfig cfg;
  cfg.theta = 1.0;
  cfg.t_max = kConsensusTMax;
  const Graph g = ring(5);
  int failed = 0;
  double best = INFINITY;
  for (std::uint64_t k = 0; k < 20; ++k) {
    Rng rng = make_rng(derive_seed(kSeed, k, "accept-theta"));
    std::normal_distribution<double> standard(0.0, 1.0);
    PrivateData s;
    for (int i = 0; i < 5; ++i) s.values.push_back(standard(rng));
    try {
      RunTrace tr = run(g, s, cfg, init_z(g, 0.0, 0.0, rng));
      const double err = convergence_error(tr.final_x(), median_interval(s.values));
      best = std::min(best, err);
      failed += err > kConsensusTol;
    } catch (const NumericFailureError&) {
      ++failed;
    }
  }
  return {failed == 20, "ring(5), theta=1: " + std::to_string(failed) +
                            "/20 runs miss 1e-6 by t=500 (smallest error " +
                            fmt("%.3g", best) + ")"};
}

std::map<std::string, std::string> run_cli(const std::vector<std::string>& args,
                                           const fs::path& dir) {
  fs::remove_all(dir);
  std::vector<std::string> full = args;
  full.insert(full.end(), {"--out-dir", dir.string()});
  std::ostringstream out, err;
  std::map<std::string, std::string> files;
  if (cli::main(full, out, err) != 0) {
    files["error"] = err.str();
    return files;
  }
  for (const auto& e : fs::directory_iterator(dir)) {
    std::ifstream in(e.path(), std::ios::binary);
    std::ostringstream body;
    body << in.rdbuf();
    files[e.path().filename().string()] = body.str();
  }
  return files;
}

Outcome determinism() {
  const fs::path root = fs::temp_directory_path() / "medcon_acceptance";
  const std::vector<std::vector<std::string>> commands = {
      {"fig1", "--seed", "42"},
      {"fig2", "--seed", "7"},
      {"fig2", "--seed", "7", "--dp", "true"},
      {"run", "--seed", "3", "--n", "9"},
      {"sweep-topology", "--seed", "5"},
      {"sweep-c", "--seed", "5", "--trials", "50"},
  };
  int identical = 0;
  std::string bad;
  for (const auto& cmd : commands) {
    auto a = run_cli(cmd, root / "a");
    auto b = run_cli(cmd, root / "b");
    std::vector<std::string> parallel = cmd;
    if (cmd[0].rfind("sweep", 0) == 0) {
      parallel.insert(parallel.end(), {"--workers", "4"});
    }
    auto c = run_cli(parallel, root / "c");
    if (!a.count("error") && a.size() >= 2 && a == b && a == c) {
      ++identical;
    } else {
      bad += " " + cmd[0];
    }
  }
  fs::remove_all(root);
  return {identical == static_cast<int>(commands.size()),
          std::to_string(identical) + "/" + std::to_string(commands.size()) +
              " commands byte-identical on repeat" +
              (bad.empty() ? "" : " (differs:" + bad + ")")};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> body;
  };
  const std::vector<Criterion> criteria = {
      {1, "prox-oracle equivalence", prox_equivalence},
      {2, "consensus correctness", consensus_correctness},
      {3, "audit verdict equals bitwise x == s",
       [] {
         run_scenarios();
         return verdict_equivalence();
       }},
      {4, "trace identities", trace_identities},
      {5, "adversary reconstruction", adversary_reconstruction},
      {6, "near-median scenario", fig1_reproduction},
      {7, "biased-initialization scenario", fig2_reproduction},
      {8, "topology ordering", topology_ordering},
      {9, "penalty ordering", c_ordering},
      {10, "theta = 1 fails to converge", theta_one_diverges},
      {11, "determinism", determinism},
  };
  int failures = 0;
  for (const Criterion& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    failures += !o.pass;
    std::printf("%s %2d %s: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id,
                c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n",
              static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
