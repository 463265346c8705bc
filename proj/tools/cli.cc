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

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "medcon/format.h"
#include "medcon/io.h"
#include "svg.h"

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include "CLI11.hpp"
#endif

namespace medcon::cli {
namespace {

namespace fs = std::filesystem;

constexpr Subcommand kSingleRuns[] = {Subcommand::kRun, Subcommand::kFig1,
                                      Subcommand::kFig2};
constexpr Subcommand kSweeps[] = {Subcommand::kSweepTopology,
                                  Subcommand::kSweepC};

struct Flag {
  const char* name;
  const char* help;
  std::set<Subcommand> applies;
};

std::set<Subcommand> runs_and_sweeps() {
  std::set<Subcommand> s(std::begin(kSingleRuns), std::end(kSingleRuns));
  s.insert(std::begin(kSweeps), std::end(kSweeps));
  return s;
}

const std::vector<Flag>& flags() {
  const std::set<Subcommand> all = runs_and_sweeps();
  const std::set<Subcommand> single(std::begin(kSingleRuns),
                                    std::end(kSingleRuns));
  const std::set<Subcommand> sweeps(std::begin(kSweeps), std::end(kSweeps));
  static const std::vector<Flag> table = {
      {"topology", "ring | complete | rgg (default rgg)",
       {Subcommand::kRun, Subcommand::kFig1, Subcommand::kFig2,
        Subcommand::kSweepC}},
      {"topology-file", "edge list to use instead of --topology", single},
      {"n", "number of nodes (default 5; 15 for sweeps)", all},
      {"radius", "rgg connection radius (default sqrt(2 ln n / n))", all},
      {"max-retries", "rgg resampling budget (default 100)", all},
      {"s", "comma-separated private values (default N(0,1) draws)", single},
      {"mu", "mean of the initial z draws (default 0; fig2 -10)", all},
      {"sigma", "std of the initial z draws (default 0.1; fig2 1)", all},
      {"c", "penalty parameter, > 0 (default 1)",
       {Subcommand::kRun, Subcommand::kFig1, Subcommand::kFig2,
        Subcommand::kSweepTopology}},
      {"theta", "averaging weight in (0, 1] (default 0.5)", all},
      {"t-max", "maximum rounds (default 500)", all},
      {"stop-tol", "early-stop change threshold, 0 disables (default 1e-10)",
       all},
      {"stop-patience", "quiet rounds before stopping (default 5)", all},
      {"dp", "true | false: offset inputs with Gaussian noise (default false)",
       all},
      {"dp-sigma", "std of the input offset when --dp is on (default 0.1)",
       all},
      {"trials", "trials per cell (default 100)", sweeps},
      {"seed", "master seed (default 0)", all},
      {"values", "comma-separated c values (default 0.2,0.5,1,2,5)",
       {Subcommand::kSweepC}},
      {"workers", "worker threads (default 1)", sweeps},
      {"corrupt", "comma-separated node ids the adversary controls", single},
      {"out-dir", "output directory (default $MEDCON_OUT, else .)", all},
      {"input", "CSV to plot (required)", {Subcommand::kPlot}},
      {"kind", "convergence | per-node-x | sweep-bars (default convergence)",
       {Subcommand::kPlot}},
      {"output", "SVG path (default: input with .svg)", {Subcommand::kPlot}},
      {"meta", "metadata file supplying s for per-node-x", {Subcommand::kPlot}},
  };
  return table;
}

Subcommand subcommand_from_string(const std::string& text) {
  static const std::map<std::string, Subcommand> names = {
      {"run", Subcommand::kRun},
      {"fig1", Subcommand::kFig1},
      {"fig2", Subcommand::kFig2},
      {"sweep-topology", Subcommand::kSweepTopology},
      {"sweep-c", Subcommand::kSweepC},
      {"plot", Subcommand::kPlot}};
  auto it = names.find(text);
  if (it == names.end()) throw UsageError("unknown subcommand '" + text + "'");
  return it->second;
}

PlotKind plot_kind_from_string(const std::string& text) {
  if (text == "convergence") return PlotKind::kConvergence;
  if (text == "per-node-x") return PlotKind::kPerNodeX;
  if (text == "sweep-bars") return PlotKind::kSweepBars;
  throw UsageError("--kind: unknown plot kind '" + text + "'");
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) out.push_back(cur);
  return out;
}

// Prepends the config file's pairs as --key=value so later flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args,
                                       std::optional<fs::path>& config_path) {
  std::vector<std::string> rest;
  for (std::size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw UsageError("--config: missing value");
      config_path = args[++k];
    } else if (args[k].rfind("--config=", 0) == 0) {
      config_path = args[k].substr(9);
    } else {
      rest.push_back(args[k]);
    }
  }
  if (!config_path) return rest;
  std::map<std::string, std::string> kv;
  try {
    kv = parse_key_values(read_file(*config_path));
  } catch (const Error& e) {
    throw UsageError("--config: " + std::string(e.what()));
  }
  std::vector<std::string> out;
  for (const auto& [key, value] : kv) {
    const bool known = std::any_of(flags().begin(), flags().end(),
                                   [&](const Flag& f) { return key == f.name; });
    if (!known) {
      throw UsageError("--config: unknown key '" + key + "' in " +
                       config_path->string());
    }
    out.push_back("--" + key + "=" + value);
  }
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

class Values {
 public:
  explicit Values(std::map<std::string, std::string> v) : v_(std::move(v)) {}

  bool has(const std::string& name) const { return v_.count(name) != 0; }
  const std::string& text(const std::string& name) const { return v_.at(name); }

  double real(const std::string& name) const {
    const double v = parse_double(v_.at(name), "--" + name);
    if (!std::isfinite(v)) fail(name, "must be finite");
    return v;
  }
  int integer(const std::string& name) const {
    return static_cast<int>(parse_int(v_.at(name), "--" + name));
  }
  std::vector<double> reals(const std::string& name) const {
    std::vector<double> out;
    for (const std::string& item : split_commas(v_.at(name))) {
      const double v = parse_double(item, "--" + name);
      if (!std::isfinite(v)) fail(name, "values must be finite");
      out.push_back(v);
    }
    if (out.empty()) fail(name, "needs at least one value");
    return out;
  }

  [[noreturn]] static void fail(const std::string& name, const std::string& why) {
    throw UsageError("--" + name + ": " + why);
  }

 private:
  std::map<std::string, std::string> v_;
};

ScenarioConfig base_config(Subcommand sub, bool dp, std::uint64_t seed) {
  switch (sub) {
    case Subcommand::kFig1: return near_median_config(seed);
    case Subcommand::kFig2: return biased_init_config(dp, seed);
    case Subcommand::kSweepTopology: return sweep_topology_config(seed);
    case Subcommand::kSweepC: return sweep_c_config(seed);
    default: {
      ScenarioConfig cfg;
      cfg.master_seed = seed;
      return cfg;
    }
  }
}

void apply(const Values& v, CliConfig& cfg) {
  const auto check = [&](bool ok, const std::string& name,
                         const std::string& why) {
    if (!ok) Values::fail(name, why);
  };
  std::uint64_t seed = 0;
  if (v.has("seed")) seed = parse_uint(v.text("seed"), "--seed");
  const bool dp = v.has("dp") && parse_bool(v.text("dp"), "--dp");
  ScenarioConfig& s = cfg.scenario;
  s = base_config(cfg.subcommand, dp, seed);
  if (dp && s.dp_sigma == 0.0) s.dp_sigma = 0.1;
  if (v.has("dp-sigma")) {
    check(dp, "dp-sigma", "requires --dp true");
    s.dp_sigma = v.real("dp-sigma");
    check(s.dp_sigma >= 0.0, "dp-sigma", "must be >= 0");
  }
  if (v.has("topology")) {
    try {
      s.topology = topology_from_string(v.text("topology"));
    } catch (const Error& e) {
      Values::fail("topology", e.what());
    }
  }
  if (v.has("topology-file")) {
    try {
      s.fixed_graph = parse_edge_list(read_file(v.text("topology-file")));
    } catch (const Error& e) {
      Values::fail("topology-file", e.what());
    }
  }
  if (v.has("n")) {
    s.n = v.integer("n");
    check(s.n >= 2, "n", "must be >= 2");
  }
  if (v.has("radius")) {
    s.rgg_radius = v.real("radius");
    check(s.rgg_radius > 0.0 && s.rgg_radius <= std::sqrt(2.0), "radius",
          "must lie in (0, sqrt(2)]");
  }
  if (v.has("max-retries")) {
    s.rgg_max_retries = v.integer("max-retries");
    check(s.rgg_max_retries >= 1, "max-retries", "must be >= 1");
  }
  if (v.has("s")) s.fixed_s = v.reals("s");
  if (v.has("mu")) s.mu = v.real("mu");
  if (v.has("sigma")) {
    s.sigma = v.real("sigma");
    check(s.sigma >= 0.0, "sigma", "must be >= 0");
  }
  if (v.has("c")) {
    s.solver.c = v.real("c");
    check(s.solver.c > 0.0, "c", "must be positive (got " + v.text("c") + ")");
  }
  if (v.has("theta")) {
    s.solver.theta = v.real("theta");
    check(s.solver.theta > 0.0 && s.solver.theta <= 1.0, "theta",
          "must lie in (0, 1]");
  }
  if (v.has("t-max")) {
    s.solver.t_max = v.integer("t-max");
    check(s.solver.t_max >= 1, "t-max", "must be >= 1");
  }
  if (v.has("stop-tol")) {
    s.solver.stop_tol = v.real("stop-tol");
    check(s.solver.stop_tol >= 0.0, "stop-tol", "must be >= 0");
  }
  if (v.has("stop-patience")) {
    s.solver.stop_patience = v.integer("stop-patience");
    check(s.solver.stop_patience >= 1, "stop-patience", "must be >= 1");
  }
  if (v.has("trials")) {
    s.trials = v.integer("trials");
    check(s.trials >= 1, "trials", "must be >= 1");
  }
  if (v.has("workers")) {
    cfg.workers = v.integer("workers");
    check(cfg.workers >= 1, "workers", "must be >= 1");
  }
  if (cfg.subcommand == Subcommand::kSweepC) {
    cfg.c_values = v.has("values") ? v.reals("values") : default_c_values();
    for (double c : cfg.c_values) check(c > 0.0, "values", "c must be positive");
  }
  if (v.has("corrupt")) {
    for (const std::string& item : split_commas(v.text("corrupt"))) {
      const long long id = parse_int(item, "--corrupt");
      check(id >= 0 && id < s.node_count(), "corrupt",
            "node id " + item + " out of range");
      cfg.corrupt.push_back(static_cast<int>(id));
    }
  }
  if (s.fixed_s) {
    check(static_cast<int>(s.fixed_s->size()) == s.node_count(), "s",
          "expected " + std::to_string(s.node_count()) + " values");
  }
  if (v.has("out-dir")) {
    cfg.out_dir = v.text("out-dir");
  } else if (const char* env = std::getenv("MEDCON_OUT"); env && *env) {
    cfg.out_dir = env;
  }
  try {
    s.validate();
  } catch (const InvalidParameterError& e) {
    throw UsageError(e.what());
  }
}

void apply_plot(const Values& v, CliConfig& cfg) {
  if (!v.has("input")) Values::fail("input", "required for plot");
  cfg.plot.input = v.text("input");
  if (v.has("kind")) cfg.plot.kind = plot_kind_from_string(v.text("kind"));
  if (v.has("output")) cfg.plot.output = fs::path(v.text("output"));
  if (v.has("meta")) cfg.plot.meta = fs::path(v.text("meta"));
}

std::string file_name(const CliConfig& cfg, const std::string& kind,
                      const std::string& ext) {
  return std::string(to_string(cfg.subcommand)) + "_" +
         std::to_string(cfg.scenario.master_seed) + "_" + kind + "." + ext;
}

// Writes every file under a temporary name first; renames only once all
// writes succeeded.
void commit(const std::vector<std::pair<fs::path, std::string>>& files) {
  std::vector<fs::path> temps;
  const auto cleanup = [&] {
    std::error_code ec;
    for (const fs::path& t : temps) fs::remove(t, ec);
  };
  try {
    for (const auto& [path, body] : files) {
      if (fs::exists(path) && !fs::is_regular_file(path)) {
        throw IoError(path.string() + " exists and is not a regular file");
      }
    }
    for (const auto& [path, body] : files) {
      if (path.has_parent_path()) fs::create_directories(path.parent_path());
      fs::path tmp = path;
      tmp += ".tmp";
      temps.push_back(tmp);
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << body;
      out.close();
      if (!out) throw IoError("cannot write " + tmp.string());
    }
    for (std::size_t k = 0; k < files.size(); ++k) {
      fs::rename(temps[k], files[k].first);
    }
  } catch (const fs::filesystem_error& e) {
    cleanup();
    throw IoError(e.what());
  } catch (...) {
    cleanup();
    throw;
  }
}

std::vector<fs::path> execute_single(const CliConfig& cfg, std::ostream& log) {
  const ScenarioConfig& sc = cfg.scenario;
  TrialOutcome out = run_trial(sc, 0, /*reconstruct=*/true);
  if (!cfg.corrupt.empty()) {
    const Transcript tr =
        build_transcript(out.trace, out.graph, out.s_used, cfg.corrupt);
    out.leaks = adversary_reconstruct(tr, out.graph, sc.solver.c,
                                      sc.solver.theta);
  }
  const MedianInterval m = median_interval(out.s.values);
  log << "nodes " << out.graph.n() << ", edges " << out.graph.num_edges()
      << "\nsecure " << out.audit.secure_count() << "/" << out.graph.n()
      << "\nstop " << to_string(out.trace.stop_reason) << " after "
      << out.trace.stopped_at() << " rounds\nconsensus "
      << format_double(out.final_consensus()) << ", median ["
      << format_double(m.lo) << ", " << format_double(m.hi) << "]\nleaks "
      << out.leaks.size() << "\n";

  const fs::path dir = cfg.out_dir;
  std::vector<std::pair<fs::path, std::string>> files = {
      {dir / file_name(cfg, "trace", "csv"), write_trace_csv(out.trace, out.s_used)},
      {dir / file_name(cfg, "audit", "csv"), write_audit_csv(out.audit)},
      {dir / file_name(cfg, "leaks", "csv"), write_leaks_csv(out.leaks)},
      {dir / file_name(cfg, "convergence", "csv"),
       write_convergence_csv(out.trace, out.s_used)},
      {dir / file_name(cfg, "meta", "txt"),
       write_key_values(trace_metadata(out.trace, sc.master_seed, out.s_used))},
      {dir / file_name(cfg, "graph", "txt"), write_edge_list(out.graph)},
  };
  commit(files);
  std::vector<fs::path> paths;
  for (const auto& f : files) paths.push_back(f.first);
  return paths;
}

std::vector<fs::path> execute_sweep(const CliConfig& cfg, std::ostream& log) {
  const SweepResult res =
      cfg.subcommand == Subcommand::kSweepC
          ? sweep_c(cfg.c_values, cfg.scenario, cfg.workers)
          : sweep_topology(cfg.scenario, cfg.workers);
  for (const SweepCell& c : res.cells) {
    log << c.label << ": secure fraction " << format_double(c.mean_secure_fraction)
        << " +- " << format_double(c.standard_error()) << " (" << c.trials
        << " trials)\n";
  }
  log << "trace checks " << (res.checks.ok() ? "ok" : "FAILED") << "\n";
  const fs::path dir = cfg.out_dir;
  std::vector<std::pair<fs::path, std::string>> files = {
      {dir / file_name(cfg, "sweep", "csv"), write_sweep_csv(res)},
      {dir / file_name(cfg, "summary", "csv"), write_summary_csv(res)},
  };
  commit(files);
  if (!res.checks.ok()) throw Error("trace invariant checks failed");
  return {files[0].first, files[1].first};
}

svg::LineChart convergence_chart(const std::string& text) {
  const CsvTable t = parse_csv(text, kConvergenceColumns);
  svg::Series s{"error", {}, {}};
  for (const auto& row : t.rows) {
    s.x.push_back(parse_double(row[t.column("t")], "t"));
    s.y.push_back(parse_double(row[t.column("error")], "error"));
  }
  return {"Convergence error", "round", "||x - median||", true, {s}, {}};
}

svg::LineChart per_node_chart(const std::string& text,
                              const std::optional<fs::path>& meta) {
  const TraceTable t = parse_trace_csv(text);
  svg::LineChart chart{"Per-node x", "round", "x", false, {}, {}};
  for (int i = 0; i < t.n; ++i) {
    svg::Series s{"node " + std::to_string(i), {}, {}};
    for (const RoundRecord& r : t.rounds) {
      s.x.push_back(r.t);
      s.y.push_back(r.x[i]);
    }
    chart.series.push_back(std::move(s));
  }
  if (meta) {
    const TraceMetadata m = parse_trace_metadata(read_file(*meta));
    if (static_cast<int>(m.s.size()) != t.n) {
      throw ParseError("--meta: s has " + std::to_string(m.s.size()) +
                       " values, trace has " + std::to_string(t.n) + " nodes");
    }
    for (int i = 0; i < t.n; ++i) {
      char label[32];
      std::snprintf(label, sizeof label, "s=%.3g", m.s[i]);
      chart.hlines.push_back({label, m.s[i]});
    }
  }
  return chart;
}

// Accepts either the summary CSV or the per-trial sweep CSV.
svg::BarChart sweep_chart(const std::string& text) {
  svg::BarChart chart{"Mean secure fraction (+-1 s.e.)", "secure fraction", {}};
  if (text.substr(0, text.find('\n')).find("secure_count") != std::string::npos) {
    const CsvTable t = parse_csv(text, kSweepColumns);
    std::vector<std::string> order;
    std::map<std::string, std::vector<TrialRow>> cells;
    for (const auto& row : t.rows) {
      TrialRow r;
      r.cell_label = row[t.column("cell_label")];
      r.trial = static_cast<int>(parse_int(row[t.column("trial")], "trial"));
      r.secure_count =
          static_cast<int>(parse_int(row[t.column("secure_count")], "secure_count"));
      r.n = static_cast<int>(parse_int(row[t.column("n")], "n"));
      r.secure_fraction =
          parse_double(row[t.column("secure_fraction")], "secure_fraction");
      r.final_error = parse_double(row[t.column("final_error")], "final_error");
      if (!cells.count(r.cell_label)) order.push_back(r.cell_label);
      cells[r.cell_label].push_back(r);
    }
    for (const std::string& label : order) {
      const SweepCell c = aggregate(label, cells[label]);
      chart.bars.push_back({label, c.mean_secure_fraction, c.standard_error()});
    }
    return chart;
  }
  const CsvTable t = parse_csv(text, kSummaryColumns);
  for (const auto& row : t.rows) {
    const double mean =
        parse_double(row[t.column("mean_secure_fraction")], "mean_secure_fraction");
    const double sd =
        parse_double(row[t.column("std_secure_fraction")], "std_secure_fraction");
    const long long trials = parse_int(row[t.column("trials")], "trials");
    chart.bars.push_back({row[t.column("cell_label")], mean,
                          trials > 0 ? sd / std::sqrt(double(trials)) : 0.0});
  }
  return chart;
}

}  // namespace

std::string_view to_string(Subcommand s) {
  switch (s) {
    case Subcommand::kRun: return "run";
    case Subcommand::kFig1: return "fig1";
    case Subcommand::kFig2: return "fig2";
    case Subcommand::kSweepTopology: return "sweep-topology";
    case Subcommand::kSweepC: return "sweep-c";
    case Subcommand::kPlot: return "plot";
  }
  return "?";
}

std::string_view to_string(PlotKind k) {
  switch (k) {
    case PlotKind::kConvergence: return "convergence";
    case PlotKind::kPerNodeX: return "per-node-x";
    case PlotKind::kSweepBars: return "sweep-bars";
  }
  return "?";
}

CliConfig parse(const std::vector<std::string>& args) {
  CliConfig cfg;
  CLI::App app{"Median consensus with a per-node privacy audit"};
  app.name("medcon");
  std::string sub;
  app.add_option("subcommand", sub,
                 "run | fig1 | fig2 | sweep-topology | sweep-c | plot");
  std::map<std::string, std::string> raw;
  std::string config_unused;
  app.add_option("--config", config_unused, "flat key = value file; flags win");
  for (const Flag& f : flags()) {
    app.add_option(std::string("--") + f.name, raw[f.name], f.help)
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  }

  std::vector<std::string> expanded;
  try {
    expanded = expand_config(args, cfg.config_path);
  } catch (const UsageError&) {
    if (std::find(args.begin(), args.end(), "--help") == args.end()) throw;
  }
  std::vector<std::string> reversed(expanded.rbegin(), expanded.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    cfg.help = true;
    cfg.help_text = app.help();
    return cfg;
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  if (sub.empty()) throw UsageError("missing subcommand");
  cfg.subcommand = subcommand_from_string(sub);

  std::map<std::string, std::string> given;
  for (const Flag& f : flags()) {
    if (app.count(std::string("--") + f.name) == 0) continue;
    if (f.applies.count(cfg.subcommand) == 0) {
      throw UsageError(std::string("--") + f.name + ": not accepted by '" +
                       sub + "'");
    }
    given[f.name] = raw[f.name];
  }
  const Values v(std::move(given));
  try {
    if (cfg.subcommand == Subcommand::kPlot) {
      apply_plot(v, cfg);
    } else {
      apply(v, cfg);
    }
  } catch (const ParseError& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

std::vector<fs::path> execute(const CliConfig& cfg, std::ostream& log) {
  switch (cfg.subcommand) {
    case Subcommand::kPlot: return {plot(cfg.plot)};
    case Subcommand::kSweepTopology:
    case Subcommand::kSweepC: return execute_sweep(cfg, log);
    default: return execute_single(cfg, log);
  }
}

fs::path plot(const PlotRequest& req) {
  const std::string text = read_file(req.input);
  std::string body;
  try {
    switch (req.kind) {
      case PlotKind::kConvergence: body = svg::render(convergence_chart(text)); break;
      case PlotKind::kPerNodeX: body = svg::render(per_node_chart(text, req.meta)); break;
      case PlotKind::kSweepBars: body = svg::render(sweep_chart(text)); break;
    }
  } catch (const ParseError& e) {
    throw ParseError(req.input.string() + ": " + e.what());
  }
  fs::path out = req.output.value_or(fs::path(req.input).replace_extension(".svg"));
  commit({{out, body}});
  return out;
}

int main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err) {
  try {
    const CliConfig cfg = parse(args);
    if (cfg.help) {
      out << cfg.help_text;
      return 0;
    }
    for (const fs::path& p : execute(cfg, out)) out << "wrote " << p.string() << "\n";
    return 0;
  } catch (const UsageError& e) {
    err << "medcon: " << e.what() << "\n(run 'medcon --help' for usage)\n";
    return 2;
  } catch (const std::exception& e) {
    err << "medcon: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace medcon::cli
