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

#include "medcon/io.h"

#include <algorithm>
#include <sstream>

#include "medcon/error.h"
#include "medcon/format.h"
#include "medcon/oracle.h"

namespace medcon {

namespace {

std::vector<std::string> split(std::string_view line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string join(const std::vector<std::string>& cols) {
  std::string out;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  return out + "\n";
}

const std::string& field(const CsvTable& t, std::size_t row,
                         std::string_view col) {
  return t.rows[row][t.column(col)];
}

}  // namespace

std::size_t CsvTable::column(std::string_view name) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == name) return i;
  }
  throw ParseError("missing column '" + std::string(name) + "'");
}

CsvTable parse_csv(std::string_view text,
                   const std::vector<std::string>& expected) {
  CsvTable table;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line, ',');
    if (table.columns.empty()) {
      table.columns = std::move(cells);
      for (const std::string& want : expected) {
        if (std::find(table.columns.begin(), table.columns.end(), want) ==
            table.columns.end()) {
          throw ParseError("missing column '" + want + "'");
        }
      }
      for (const std::string& got : table.columns) {
        if (std::find(expected.begin(), expected.end(), got) ==
            expected.end()) {
          throw ParseError("unexpected column '" + got + "'");
        }
      }
      continue;
    }
    if (cells.size() != table.columns.size()) {
      throw ParseError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(table.columns.size()) + " fields, got " +
                       std::to_string(cells.size()));
    }
    table.rows.push_back(std::move(cells));
  }
  if (table.columns.empty()) throw ParseError("empty CSV (no header)");
  return table;
}

std::string write_trace_csv(const RunTrace& trace, const PrivateData& s) {
  std::string out = join(kTraceColumns);
  for (const RoundRecord& r : trace.rounds) {
    const std::string t = std::to_string(r.t);
    for (int i = 0; i < trace.n; ++i) {
      out += t;
      out += ',';
      out += std::to_string(i);
      out += ',';
      out += format_double(r.x[i]);
      out += ',';
      out += format_double(r.intervals[i].lo);
      out += ',';
      out += format_double(r.intervals[i].hi);
      out += r.intervals[i].contains(s[i]) ? ",1\n" : ",0\n";
    }
  }
  return out;
}

TraceTable parse_trace_csv(std::string_view text) {
  const CsvTable csv = parse_csv(text, kTraceColumns);
  TraceTable table;
  for (std::size_t k = 0; k < csv.rows.size(); ++k) {
    const auto t = parse_int(field(csv, k, "t"), "t");
    const auto node = parse_int(field(csv, k, "node"), "node");
    if (t < 0 || node < 0) throw ParseError("negative t or node");
    if (t == static_cast<std::int64_t>(table.rounds.size())) {
      table.rounds.emplace_back();
      table.rounds.back().t = static_cast<int>(t);
      table.s_in_interval.emplace_back();
    }
    if (t != static_cast<std::int64_t>(table.rounds.size()) - 1) {
      throw ParseError("rows for round " + std::to_string(t) +
                       " are out of order");
    }
    RoundRecord& r = table.rounds.back();
    if (node != static_cast<std::int64_t>(r.x.size())) {
      throw ParseError("round " + std::to_string(t) + ": node " +
                       std::to_string(node) + " out of order");
    }
    r.x.push_back(parse_double(field(csv, k, "x"), "x"));
    r.intervals.push_back({parse_double(field(csv, k, "lo"), "lo"),
                           parse_double(field(csv, k, "hi"), "hi")});
    table.s_in_interval.back().push_back(
        parse_bool(field(csv, k, "s_in_interval"), "s_in_interval"));
  }
  if (!table.rounds.empty()) {
    table.n = static_cast<int>(table.rounds.front().x.size());
    for (const RoundRecord& r : table.rounds) {
      if (static_cast<int>(r.x.size()) != table.n) {
        throw ParseError("round " + std::to_string(r.t) +
                         " has the wrong number of nodes");
      }
    }
  }
  return table;
}

std::string write_key_values(const KeyValues& kv) {
  std::string out;
  for (const auto& [k, v] : kv) out += k + "=" + v + "\n";
  return out;
}

std::map<std::string, std::string> parse_key_values(std::string_view text) {
  std::map<std::string, std::string> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::string_view body = trim(line);
    if (body.empty()) continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected key=value");
    }
    std::string key(trim(body.substr(0, eq)));
    if (key.empty()) {
      throw ParseError("line " + std::to_string(line_no) + ": empty key");
    }
    if (out.contains(key)) {
      throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" +
                       key + "'");
    }
    out.emplace(std::move(key), std::string(trim(body.substr(eq + 1))));
  }
  return out;
}

KeyValues trace_metadata(const RunTrace& trace, std::uint64_t seed,
                         const PrivateData& s) {
  std::string s_list;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) s_list += ',';
    s_list += format_double(s[i]);
  }
  return {
      {"c", format_double(trace.config.c)},
      {"theta", format_double(trace.config.theta)},
      {"t_max", std::to_string(trace.config.t_max)},
      {"stop_tol", format_double(trace.config.stop_tol)},
      {"stop_patience", std::to_string(trace.config.stop_patience)},
      {"seed", std::to_string(seed)},
      {"topology_hash", std::to_string(trace.topology_hash)},
      {"n", std::to_string(trace.n)},
      {"stop_reason", std::string(to_string(trace.stop_reason))},
      {"stopped_at", std::to_string(trace.stopped_at())},
      {"s", s_list},
  };
}

TraceMetadata parse_trace_metadata(std::string_view text) {
  const auto kv = parse_key_values(text);
  auto get = [&kv](const std::string& key) -> const std::string& {
    auto it = kv.find(key);
    if (it == kv.end()) throw ParseError("metadata is missing '" + key + "'");
    return it->second;
  };
  TraceMetadata m;
  m.config.c = parse_double(get("c"), "c");
  m.config.theta = parse_double(get("theta"), "theta");
  m.config.t_max = static_cast<int>(parse_int(get("t_max"), "t_max"));
  m.config.stop_tol = parse_double(get("stop_tol"), "stop_tol");
  m.config.stop_patience =
      static_cast<int>(parse_int(get("stop_patience"), "stop_patience"));
  m.seed = parse_uint(get("seed"), "seed");
  m.topology_hash = parse_uint(get("topology_hash"), "topology_hash");
  m.n = static_cast<int>(parse_int(get("n"), "n"));
  m.stop_reason = stop_reason_from_string(get("stop_reason"));
  m.stopped_at = static_cast<int>(parse_int(get("stopped_at"), "stopped_at"));
  const std::string& s_list = get("s");
  if (!s_list.empty()) {
    for (const std::string& tok : split(s_list, ',')) {
      m.s.push_back(parse_double(trim(tok), "s"));
    }
  }
  return m;
}

std::string write_zstate(const ZState& z) {
  std::string out;
  for (std::size_t e = 0; e < z.values.size(); ++e) {
    if (e) out += ',';
    out += format_double(z.values[e]);
  }
  return out;
}

ZState parse_zstate(std::string_view text) {
  ZState z;
  text = trim(text);
  if (text.empty()) return z;
  for (const std::string& tok : split(text, ',')) {
    z.values.push_back(parse_double(trim(tok), "z"));
  }
  return z;
}

std::string write_audit_csv(const AuditReport& report) {
  std::string out = join(kAuditColumns);
  for (std::size_t i = 0; i < report.nodes.size(); ++i) {
    const NodeAudit& a = report.nodes[i];
    out += std::to_string(i) + "," + (a.secure ? "1" : "0") + "," +
           (a.first_violation ? std::to_string(*a.first_violation) : "") +
           "," + std::to_string(a.violation_rounds.size()) + "\n";
  }
  return out;
}

std::string write_leaks_csv(const std::vector<LeakFinding>& leaks) {
  std::string out = join(kLeakColumns);
  for (const LeakFinding& f : leaks) {
    out += std::to_string(f.node) + "," + std::to_string(f.round) + "," +
           format_double(f.value) + "," + (f.boundary_ambiguous ? "1" : "0") +
           "\n";
  }
  return out;
}

std::string write_sweep_csv(const SweepResult& result) {
  std::string out = join(kSweepColumns);
  for (const TrialRow& r : result.rows) {
    out += r.cell_label + "," + std::to_string(r.trial) + "," +
           std::to_string(r.secure_count) + "," + std::to_string(r.n) + "," +
           format_double(r.secure_fraction) + "," +
           format_double(r.final_error) + "," +
           std::to_string(r.rounds_executed) + "\n";
  }
  return out;
}

std::string write_summary_csv(const SweepResult& result) {
  std::string out = join(kSummaryColumns);
  for (const SweepCell& c : result.cells) {
    out += c.label + "," + format_double(c.mean_secure_fraction) + "," +
           format_double(c.std_secure_fraction) + "," +
           format_double(c.mean_final_error) + "," + std::to_string(c.trials) +
           "\n";
  }
  return out;
}

std::string write_convergence_csv(const RunTrace& trace, const PrivateData& s) {
  const MedianInterval target = median_interval(s.values);
  std::string out = join(kConvergenceColumns);
  for (const RoundRecord& r : trace.rounds) {
    out += std::to_string(r.t) + "," +
           format_double(convergence_error(r.x, target)) + "\n";
  }
  return out;
}

}  // namespace medcon
