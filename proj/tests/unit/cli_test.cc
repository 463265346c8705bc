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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "medcon/format.h"
#include "medcon/io.h"

namespace medcon::cli {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream(p, std::ios::binary) << text;
}

std::string usage_error(const std::vector<std::string>& args) {
  try {
    parse(args);
  } catch (const UsageError& e) {
    return e.what();
  }
  ADD_FAILURE() << "no usage error";
  return "";
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::path(::testing::TempDir()) /
           ::testing::UnitTest::GetInstance()->current_test_info()->name();
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  int Run(std::vector<std::string> args) {
    out_.str("");
    err_.str("");
    return main(args, out_, err_);
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

TEST(ParseTest, Fig2WithDp) {
  CliConfig cfg = parse({"fig2", "--dp", "true", "--seed", "7", "--out-dir", "out/"});
  EXPECT_EQ(cfg.subcommand, Subcommand::kFig2);
  EXPECT_DOUBLE_EQ(cfg.scenario.dp_sigma * cfg.scenario.dp_sigma, 1e-2);
  EXPECT_EQ(cfg.scenario.mu, -10.0);
  EXPECT_EQ(cfg.scenario.master_seed, 7u);
  EXPECT_EQ(cfg.out_dir, fs::path("out/"));
}

TEST(ParseTest, NegativeCNamesFlag) {
  const std::string msg = usage_error({"run", "--c", "-1"});
  EXPECT_THAT(msg, HasSubstr("--c"));
  EXPECT_THAT(msg, HasSubstr("positive"));
}

TEST(ParseTest, SweepCValues) {
  CliConfig cfg =
      parse({"sweep-c", "--values", "0.2,0.5,1,2,5", "--trials", "100"});
  EXPECT_EQ(cfg.c_values, (std::vector<double>{0.2, 0.5, 1, 2, 5}));
  EXPECT_EQ(cfg.scenario.trials, 100);
  EXPECT_EQ(cfg.scenario.n, 15);
}

TEST(ParseTest, Errors) {
  EXPECT_THAT(usage_error({"run", "--bogus", "1"}), HasSubstr("--bogus"));
  EXPECT_THAT(usage_error({"run", "--n", "five"}), HasSubstr("--n"));
  EXPECT_THAT(usage_error({"run", "--theta", "1.5"}), HasSubstr("--theta"));
  EXPECT_THAT(usage_error({"run", "--dp", "maybe"}), HasSubstr("--dp"));
  EXPECT_THAT(usage_error({"run", "--dp-sigma", "0.3"}), HasSubstr("--dp-sigma"));
  EXPECT_THAT(usage_error({"fig1", "--trials", "3"}), HasSubstr("--trials"));
  EXPECT_THAT(usage_error({"sweep-c", "--c", "2"}), HasSubstr("--c"));
  EXPECT_THAT(usage_error({"run", "--n", "4", "--s", "1,2"}), HasSubstr("--s"));
  EXPECT_THAT(usage_error({"run", "--corrupt", "9"}), HasSubstr("--corrupt"));
  EXPECT_THAT(usage_error({"plot"}), HasSubstr("--input"));
  EXPECT_THAT(usage_error({"frobnicate"}), HasSubstr("frobnicate"));
  EXPECT_THAT(usage_error({}), HasSubstr("subcommand"));
  EXPECT_THAT(usage_error({"run", "--c"}), HasSubstr("--c"));
}

TEST(ParseTest, HelpListsEveryFlag) {
  CliConfig cfg = parse({"--help"});
  ASSERT_TRUE(cfg.help);
  for (const char* flag :
       {"--topology", "--topology-file", "--n", "--radius", "--max-retries",
        "--s", "--mu", "--sigma", "--c", "--theta", "--t-max", "--stop-tol",
        "--stop-patience", "--dp", "--dp-sigma", "--trials", "--seed",
        "--values", "--workers", "--corrupt", "--out-dir", "--config",
        "--input", "--kind", "--output", "--meta"}) {
    EXPECT_THAT(cfg.help_text, HasSubstr(std::string(flag) + " ")) << flag;
  }
  EXPECT_THAT(cfg.help_text, HasSubstr("default 500"));
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  spit(dir_ / "cfg.txt", "# fig settings\nc = 2\ntheta=0.75\nseed = 3\n");
  CliConfig cfg = parse({"run", "--config", (dir_ / "cfg.txt").string(),
                         "--c", "4"});
  EXPECT_EQ(cfg.scenario.solver.c, 4.0);
  EXPECT_EQ(cfg.scenario.solver.theta, 0.75);
  EXPECT_EQ(cfg.scenario.master_seed, 3u);
  EXPECT_EQ(cfg.config_path, dir_ / "cfg.txt");

  spit(dir_ / "bad.txt", "c = 2\nspeed = 9\n");
  EXPECT_THAT(usage_error({"run", "--config", (dir_ / "bad.txt").string()}),
              HasSubstr("speed"));
  EXPECT_THAT(usage_error({"run", "--config", (dir_ / "none.txt").string()}),
              HasSubstr("--config"));
}

TEST_F(CliTest, OutDirFallsBackToEnvironment) {
  ::setenv("MEDCON_OUT", dir_.c_str(), 1);
  EXPECT_EQ(parse({"fig1"}).out_dir, dir_);
  EXPECT_EQ(parse({"fig1", "--out-dir", "elsewhere"}).out_dir,
            fs::path("elsewhere"));
  ::unsetenv("MEDCON_OUT");
  EXPECT_EQ(parse({"fig1"}).out_dir, fs::path("."));
}

TEST_F(CliTest, Fig1TwiceIsByteIdentical) {
  ASSERT_EQ(Run({"fig1", "--seed", "42", "--out-dir", (dir_ / "a").string()}), 0)
      << err_.str();
  ASSERT_EQ(Run({"fig1", "--seed", "42", "--out-dir", (dir_ / "b").string()}), 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(dir_ / "a")) {
    const fs::path name = entry.path().filename();
    EXPECT_THAT(name.string(), ::testing::StartsWith("fig1_42_"));
    EXPECT_EQ(slurp(entry.path()), slurp(dir_ / "b" / name)) << name;
    ++files;
  }
  EXPECT_EQ(files, 6);
}

TEST_F(CliTest, SweepTopologyDefaultsGiveThreeRows) {
  ASSERT_EQ(Run({"sweep-topology", "--out-dir", dir_.string()}), 0) << err_.str();
  CsvTable t = parse_csv(slurp(dir_ / "sweep-topology_0_summary.csv"),
                         kSummaryColumns);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_EQ(t.rows[0][t.column("trials")], "100");
}

TEST_F(CliTest, ModuleErrorExitsNonzeroWithoutOutput) {
  EXPECT_NE(Run({"run", "--topology", "ring", "--n", "2", "--out-dir",
                 dir_.string()}),
            0);
  EXPECT_THAT(err_.str(), HasSubstr("n must be >= 3"));
  EXPECT_TRUE(fs::is_empty(dir_));
}

TEST_F(CliTest, FailedWriteLeavesExistingSetIntact) {
  const std::vector<std::string> args = {"fig1", "--seed", "5", "--out-dir",
                                         dir_.string()};
  ASSERT_EQ(Run(args), 0);
  const std::string trace = slurp(dir_ / "fig1_5_trace.csv");
  fs::remove(dir_ / "fig1_5_leaks.csv");
  fs::create_directory(dir_ / "fig1_5_leaks.csv");
  std::vector<std::string> changed = args;
  changed.insert(changed.end(), {"--c", "3"});
  EXPECT_NE(Run(changed), 0);
  EXPECT_EQ(slurp(dir_ / "fig1_5_trace.csv"), trace);
  for (const auto& entry : fs::directory_iterator(dir_)) {
    EXPECT_NE(entry.path().extension(), ".tmp");
  }
}

TEST_F(CliTest, RunWithExplicitInputs) {
  spit(dir_ / "g.txt", "n 4\n0 1\n1 2\n2 3\n3 0\n");
  ASSERT_EQ(Run({"run", "--topology-file", (dir_ / "g.txt").string(), "--s",
                 "1,2,3,10", "--sigma", "0", "--corrupt", "0,2", "--out-dir",
                 dir_.string()}),
            0)
      << err_.str();
  TraceMetadata m = parse_trace_metadata(slurp(dir_ / "run_0_meta.txt"));
  EXPECT_EQ(m.s, (std::vector<double>{1, 2, 3, 10}));
  CsvTable leaks = parse_csv(slurp(dir_ / "run_0_leaks.csv"), kLeakColumns);
  bool saw_corrupt = false;
  for (const auto& row : leaks.rows) {
    const int node = static_cast<int>(parse_int(row[0], "node"));
    saw_corrupt |= node == 0 || node == 2;
  }
  EXPECT_TRUE(saw_corrupt);
}

TEST_F(CliTest, EveryPlottableCsvRoundTrips) {
  ASSERT_EQ(Run({"fig1", "--out-dir", dir_.string()}), 0);
  ASSERT_EQ(Run({"sweep-c", "--trials", "5", "--out-dir", dir_.string()}), 0);
  struct Case {
    const char* file;
    const char* kind;
  };
  for (const Case& c : {Case{"fig1_0_convergence.csv", "convergence"},
                        Case{"fig1_0_trace.csv", "per-node-x"},
                        Case{"sweep-c_0_summary.csv", "sweep-bars"},
                        Case{"sweep-c_0_sweep.csv", "sweep-bars"}}) {
    const fs::path out = dir_ / (std::string(c.file) + ".svg");
    ASSERT_EQ(Run({"plot", "--input", (dir_ / c.file).string(), "--kind",
                   c.kind, "--output", out.string()}),
              0)
        << c.file << ": " << err_.str();
    const std::string svg = slurp(out);
    EXPECT_THAT(svg, HasSubstr("viewBox=\"0 0 800 500\""));
    EXPECT_THAT(svg, HasSubstr("</svg>"));
  }
}

TEST_F(CliTest, PlotSchemaMismatchNamesColumn) {
  ASSERT_EQ(Run({"fig1", "--out-dir", dir_.string()}), 0);
  EXPECT_NE(Run({"plot", "--input", (dir_ / "fig1_0_audit.csv").string(),
                 "--kind", "convergence"}),
            0);
  EXPECT_THAT(err_.str(), HasSubstr("'t'"));
}

TEST_F(CliTest, ConvergencePlotTrendsDown) {
  ASSERT_EQ(Run({"fig1", "--seed", "11", "--out-dir", dir_.string()}), 0);
  const fs::path csv = dir_ / "fig1_11_convergence.csv";
  CsvTable t = parse_csv(slurp(csv), kConvergenceColumns);
  EXPECT_LT(parse_double(t.rows.back()[1], "error"),
            parse_double(t.rows.front()[1], "error"));
  ASSERT_EQ(Run({"plot", "--input", csv.string()}), 0);
  EXPECT_THAT(slurp(dir_ / "fig1_11_convergence.svg"), HasSubstr("<polyline"));
}

TEST_F(CliTest, PerNodePlotOfFig2ShowsPlateaus) {
  ASSERT_EQ(Run({"fig2", "--seed", "3", "--out-dir", dir_.string()}), 0);
  const TraceTable trace = parse_trace_csv(slurp(dir_ / "fig2_3_trace.csv"));
  const TraceMetadata meta = parse_trace_metadata(slurp(dir_ / "fig2_3_meta.txt"));
  int longest = 0;
  for (int i = 0; i < trace.n; ++i) {
    int run = 0;
    for (const RoundRecord& r : trace.rounds) {
      run = r.x[i] == meta.s[i] ? run + 1 : 0;
      longest = std::max(longest, run);
    }
  }
  EXPECT_GE(longest, 10);

  ASSERT_EQ(Run({"plot", "--input", (dir_ / "fig2_3_trace.csv").string(),
                 "--kind", "per-node-x", "--meta",
                 (dir_ / "fig2_3_meta.txt").string()}),
            0);
  const std::string svg = slurp(dir_ / "fig2_3_trace.svg");
  std::size_t lines = 0, hlines = 0;
  for (std::size_t p = svg.find("<polyline"); p != std::string::npos;
       p = svg.find("<polyline", p + 1)) {
    ++lines;
  }
  for (std::size_t p = svg.find("class=\"hline\""); p != std::string::npos;
       p = svg.find("class=\"hline\"", p + 1)) {
    ++hlines;
  }
  EXPECT_EQ(lines, 5u);
  EXPECT_EQ(hlines, 5u);
}

TEST_F(CliTest, SingleCellSweepGivesOneBar) {
  ASSERT_EQ(Run({"sweep-c", "--values", "1", "--trials", "4", "--out-dir",
                 dir_.string()}),
            0);
  ASSERT_EQ(Run({"plot", "--input", (dir_ / "sweep-c_0_summary.csv").string(),
                 "--kind", "sweep-bars"}),
            0);
  const std::string svg = slurp(dir_ / "sweep-c_0_summary.svg");
  EXPECT_EQ(svg.find("class=\"bar\""), svg.rfind("class=\"bar\""));
  EXPECT_NE(svg.find("class=\"bar\""), std::string::npos);
}

}  // namespace
}  // namespace medcon::cli
