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

#ifndef MEDCON_GRAPH_H_
#define MEDCON_GRAPH_H_

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "medcon/random.h"

namespace medcon {

// Undirected edge, always stored with i < j.
struct Edge {
  int i = 0;
  int j = 0;
  auto operator<=>(const Edge&) const = default;
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

// Undirected simple graph on nodes 0..n-1.
//
// Besides the edge list and sorted adjacency, the graph fixes a canonical
// numbering of the 2|E| directed edges: the directed edge (i|j) gets index
// out_begin(i) + rank of j in neighbors(i). Every per-directed-edge array in
// the library (ZState in particular) uses this order.
//
// Construction enforces simplicity only. Connectivity is a property checked
// by is_connected() and required by the generators and the solver.
class Graph {
 public:
  Graph() = default;

  // Validates and normalizes (orients i < j, sorts). Rejects self-loops,
  // duplicates and out-of-range ids with InvalidParameterError.
  static Graph from_edges(int n, std::vector<Edge> edges);

  int n() const { return n_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t num_edges() const { return edges_.size(); }

  std::span<const int> neighbors(int i) const {
    return {adjacency_.data() + offsets_[i],
            static_cast<std::size_t>(offsets_[i + 1] - offsets_[i])};
  }
  int degree(int i) const { return offsets_[i + 1] - offsets_[i]; }
  std::vector<int> degrees() const;

  std::size_t num_directed_edges() const { return adjacency_.size(); }
  std::size_t out_begin(int i) const { return offsets_[i]; }
  std::size_t out_end(int i) const { return offsets_[i + 1]; }
  // Target j of directed edge e = (i|j).
  int target(std::size_t e) const { return adjacency_[e]; }
  int source(std::size_t e) const { return sources_[e]; }
  // Index of (j|i) given e = (i|j).
  std::size_t reverse(std::size_t e) const { return reverse_[e]; }
  // Throws InvalidParameterError when (i, j) is not an edge.
  std::size_t directed_index(int i, int j) const;
  bool has_edge(int i, int j) const;

  // Sample positions for geometric graphs; empty otherwise. Not part of
  // equality.
  const std::vector<Point>& points() const { return points_; }
  void set_points(std::vector<Point> points) { points_ = std::move(points); }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<int> offsets_{0};
  std::vector<int> adjacency_;
  std::vector<int> sources_;
  std::vector<std::size_t> reverse_;
  std::vector<Point> points_;
};

struct RggParams {
  int n = 0;
  double radius = 0.0;
  int max_retries = 100;

  // Radius sqrt(2 ln n / n), a conventional choice just above the
  // connectivity threshold of the unit-square RGG.
  static RggParams with_default_radius(int n, int max_retries = 100);
  void validate() const;
};

double default_rgg_radius(int n);

// Cycle 0-1-...-(n-1)-0. Requires n >= 3.
Graph ring(int n);
// All n(n-1)/2 pairs. Requires n >= 2.
Graph complete(int n);
// Uniform points in the unit square, edge iff distance <= radius. The whole
// point set is resampled until the graph is connected; after max_retries
// failures a GenerationFailureError is thrown.
Graph rgg(const RggParams& params, Rng& rng);

// The oriented incidence convention: +1 if i < j, -1 if i > j.
int incidence_sign(int i, int j);

bool is_connected(const Graph& g);

// FNV-1a over (n, sorted edges); recorded in run metadata.
std::uint64_t topology_hash(const Graph& g);

// Plain-text edge list: "n <count>" followed by one sorted "i j" per line.
std::string write_edge_list(const Graph& g);
// Parses write_edge_list output. Blank lines and '#' comments are ignored.
Graph parse_edge_list(std::string_view text);

}  // namespace medcon

#endif  // MEDCON_GRAPH_H_
