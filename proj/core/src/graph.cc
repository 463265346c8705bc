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

#include "medcon/graph.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <queue>
#include <sstream>

#include "medcon/error.h"

namespace medcon {

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 1) throw InvalidParameterError("graph needs at least one node");
  for (Edge& e : edges) {
    if (e.i == e.j) {
      throw InvalidParameterError("self-loop at node " + std::to_string(e.i));
    }
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) {
      throw InvalidParameterError("edge (" + std::to_string(e.i) + ", " +
                                  std::to_string(e.j) + ") out of range");
    }
    if (e.i > e.j) std::swap(e.i, e.j);
  }
  std::sort(edges.begin(), edges.end());
  if (auto dup = std::adjacent_find(edges.begin(), edges.end());
      dup != edges.end()) {
    throw InvalidParameterError("duplicate edge (" + std::to_string(dup->i) +
                                ", " + std::to_string(dup->j) + ")");
  }

  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);

  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : g.edges_) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  g.offsets_.assign(n + 1, 0);
  for (int i = 0; i < n; ++i) {
    std::sort(adj[i].begin(), adj[i].end());
    g.offsets_[i + 1] = g.offsets_[i] + static_cast<int>(adj[i].size());
  }
  g.adjacency_.reserve(g.offsets_[n]);
  g.sources_.reserve(g.offsets_[n]);
  for (int i = 0; i < n; ++i) {
    g.adjacency_.insert(g.adjacency_.end(), adj[i].begin(), adj[i].end());
    g.sources_.insert(g.sources_.end(), adj[i].size(), i);
  }
  g.reverse_.resize(g.adjacency_.size());
  for (std::size_t e = 0; e < g.adjacency_.size(); ++e) {
    g.reverse_[e] = g.directed_index(g.adjacency_[e], g.sources_[e]);
  }
  return g;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(n_);
  for (int i = 0; i < n_; ++i) d[i] = degree(i);
  return d;
}

std::size_t Graph::directed_index(int i, int j) const {
  if (i >= 0 && i < n_) {
    auto nb = neighbors(i);
    auto it = std::lower_bound(nb.begin(), nb.end(), j);
    if (it != nb.end() && *it == j) {
      return offsets_[i] + static_cast<std::size_t>(it - nb.begin());
    }
  }
  throw InvalidParameterError("(" + std::to_string(i) + ", " +
                              std::to_string(j) + ") is not an edge");
}

bool Graph::has_edge(int i, int j) const {
  if (i < 0 || i >= n_) return false;
  auto nb = neighbors(i);
  return std::binary_search(nb.begin(), nb.end(), j);
}

double default_rgg_radius(int n) {
  if (n < 2) throw InvalidParameterError("rgg needs n >= 2");
  return std::sqrt(2.0 * std::log(static_cast<double>(n)) / n);
}

RggParams RggParams::with_default_radius(int n, int max_retries) {
  return RggParams{n, default_rgg_radius(n), max_retries};
}

void RggParams::validate() const {
  if (n < 2) throw InvalidParameterError("rgg: n must be >= 2");
  if (!(radius > 0.0) || radius > std::sqrt(2.0) + 1e-12) {
    throw InvalidParameterError("rgg: radius must lie in (0, sqrt(2)]");
  }
  if (max_retries < 1) {
    throw InvalidParameterError("rgg: max_retries must be positive");
  }
}

Graph ring(int n) {
  if (n < 3) {
    throw InvalidParameterError("ring: n must be >= 3 (got " +
                                std::to_string(n) + ")");
  }
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  edges.push_back({0, n - 1});
  return Graph::from_edges(n, std::move(edges));
}

Graph complete(int n) {
  if (n < 2) {
    throw InvalidParameterError("complete: n must be >= 2 (got " +
                                std::to_string(n) + ")");
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j});
  }
  return Graph::from_edges(n, std::move(edges));
}

Graph rgg(const RggParams& params, Rng& rng) {
  params.validate();
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double r2 = params.radius * params.radius;
  for (int attempt = 1; attempt <= params.max_retries; ++attempt) {
    std::vector<Point> pts(params.n);
    for (Point& p : pts) {
      p.x = unit(rng);
      p.y = unit(rng);
    }
    std::vector<Edge> edges;
    for (int i = 0; i < params.n; ++i) {
      for (int j = i + 1; j < params.n; ++j) {
        const double dx = pts[i].x - pts[j].x;
        const double dy = pts[i].y - pts[j].y;
        if (dx * dx + dy * dy <= r2) edges.push_back({i, j});
      }
    }
    Graph g = Graph::from_edges(params.n, std::move(edges));
    if (is_connected(g)) {
      g.set_points(std::move(pts));
      return g;
    }
  }
  throw GenerationFailureError(
      "rgg: no connected sample after " + std::to_string(params.max_retries) +
          " attempts (n=" + std::to_string(params.n) +
          ", radius=" + std::to_string(params.radius) + ")",
      params.max_retries);
}

int incidence_sign(int i, int j) {
  if (i == j) {
    throw InvalidParameterError("incidence_sign: i == j (" +
                                std::to_string(i) + ")");
  }
  return i < j ? 1 : -1;
}

bool is_connected(const Graph& g) {
  if (g.n() <= 1) return true;
  std::vector<char> seen(g.n(), 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v : g.neighbors(u)) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == g.n();
}

std::uint64_t topology_hash(const Graph& g) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](std::uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint64_t>(g.n()));
  for (const Edge& e : g.edges()) {
    mix(static_cast<std::uint64_t>(e.i));
    mix(static_cast<std::uint64_t>(e.j));
  }
  return h;
}

std::string write_edge_list(const Graph& g) {
  std::string out = "n " + std::to_string(g.n()) + "\n";
  for (const Edge& e : g.edges()) {
    out += std::to_string(e.i) + " " + std::to_string(e.j) + "\n";
  }
  return out;
}

namespace {

int parse_int_token(std::string_view tok, int line_no) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc() || ptr != tok.data() + tok.size()) {
    throw ParseError("edge list line " + std::to_string(line_no) +
                     ": expected integer, got '" + std::string(tok) + "'");
  }
  return v;
}

}  // namespace

Graph parse_edge_list(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream fields(line);
    std::string a, b, extra;
    if (!(fields >> a)) continue;
    if (!(fields >> b) || (fields >> extra)) {
      throw ParseError("edge list line " + std::to_string(line_no) +
                       ": expected two fields");
    }
    if (n < 0) {
      if (a != "n") {
        throw ParseError("edge list must start with 'n <count>'");
      }
      n = parse_int_token(b, line_no);
      continue;
    }
    edges.push_back({parse_int_token(a, line_no), parse_int_token(b, line_no)});
  }
  if (n < 0) throw ParseError("edge list is missing the 'n <count>' header");
  return Graph::from_edges(n, std::move(edges));
}

}  // namespace medcon
