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

#ifndef MEDCON_IO_H_
#define MEDCON_IO_H_

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "medcon/audit.h"
#include "medcon/harness.h"
#include "medcon/solver.h"

namespace medcon {

// Header-checked CSV table. Fields are kept as text; no quoting support
// (none of the schemas below need it).
struct CsvTable {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;
};

// Throws ParseError naming the first missing or unexpected column when the
// header differs from `expected`.
CsvTable parse_csv(std::string_view text,
                   const std::vector<std::string>& expected);

inline const std::vector<std::string> kTraceColumns = {
    "t", "node", "x", "lo", "hi", "s_in_interval"};
inline const std::vector<std::string> kAuditColumns = {
    "node", "secure", "first_violation", "n_violations"};
inline const std::vector<std::string> kLeakColumns = {
    "node", "round", "value", "boundary_ambiguous"};
inline const std::vector<std::string> kSweepColumns = {
    "cell_label", "trial", "secure_count", "n", "secure_fraction",
    "final_error", "rounds_executed"};
inline const std::vector<std::string> kSummaryColumns = {
    "cell_label", "mean_secure_fraction", "std_secure_fraction",
    "mean_final_error", "trials"};
inline const std::vector<std::string> kConvergenceColumns = {"t", "error"};

// One row per node per round. Reals use the shortest round-trip decimal, so
// parse_trace_csv restores x, lo and hi bit for bit.
std::string write_trace_csv(const RunTrace& trace, const PrivateData& s);

struct TraceTable {
  int n = 0;
  std::vector<RoundRecord> rounds;  // z left empty
  std::vector<std::vector<bool>> s_in_interval;
};
TraceTable parse_trace_csv(std::string_view text);

// Flat "key=value" text, one pair per line; '#' starts a comment.
using KeyValues = std::vector<std::pair<std::string, std::string>>;
std::string write_key_values(const KeyValues& kv);
std::map<std::string, std::string> parse_key_values(std::string_view text);

// Sidecar for a trace CSV: solver config, seed, topology hash, stop state
// and the private values the run used.
KeyValues trace_metadata(const RunTrace& trace, std::uint64_t seed,
                         const PrivateData& s);

struct TraceMetadata {
  SolverConfig config;
  std::uint64_t seed = 0;
  std::uint64_t topology_hash = 0;
  StopReason stop_reason = StopReason::kMaxRounds;
  int stopped_at = -1;
  int n = 0;
  std::vector<double> s;
};
TraceMetadata parse_trace_metadata(std::string_view text);

// Comma-separated z values in directed-edge order.
std::string write_zstate(const ZState& z);
ZState parse_zstate(std::string_view text);

std::string write_audit_csv(const AuditReport& report);
std::string write_leaks_csv(const std::vector<LeakFinding>& leaks);
std::string write_sweep_csv(const SweepResult& result);
std::string write_summary_csv(const SweepResult& result);
// Per-round convergence_error against the median interval of `s`.
std::string write_convergence_csv(const RunTrace& trace, const PrivateData& s);

}  // namespace medcon

#endif  // MEDCON_IO_H_
