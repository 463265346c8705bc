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

#ifndef MEDCON_TOOLS_CLI_H_
#define MEDCON_TOOLS_CLI_H_

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "medcon/error.h"
#include "medcon/harness.h"

namespace medcon::cli {

enum class Subcommand { kRun, kFig1, kFig2, kSweepTopology, kSweepC, kPlot };

std::string_view to_string(Subcommand s);

enum class PlotKind { kConvergence, kPerNodeX, kSweepBars };

std::string_view to_string(PlotKind k);

class UsageError : public Error {
 public:
  using Error::Error;
};

struct PlotRequest {
  std::filesystem::path input;
  PlotKind kind = PlotKind::kConvergence;
  std::optional<std::filesystem::path> output;  // default: input with .svg
  std::optional<std::filesystem::path> meta;    // supplies s for per-node-x
};

struct CliConfig {
  Subcommand subcommand = Subcommand::kRun;
  std::optional<std::filesystem::path> config_path;
  ScenarioConfig scenario;
  std::vector<double> c_values;  // sweep-c only
  // Nodes whose internals the adversary sees; empty means eavesdropper only.
  std::vector<int> corrupt;
  int workers = 1;
  std::filesystem::path out_dir = ".";
  PlotRequest plot;
  bool help = false;
  std::string help_text;
};

// `args` excludes the program name. Throws UsageError naming the flag.
CliConfig parse(const std::vector<std::string>& args);

// Returns the paths written, in a fixed order. Throws on failure; nothing
// is renamed into place unless every file was written.
std::vector<std::filesystem::path> execute(const CliConfig& cfg,
                                           std::ostream& log);

std::filesystem::path plot(const PlotRequest& req);

// Entry point shared by the executable and the tests.
int main(const std::vector<std::string>& args, std::ostream& out,
         std::ostream& err);

}  // namespace medcon::cli

#endif  // MEDCON_TOOLS_CLI_H_
