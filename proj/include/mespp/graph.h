// Copyright 2026 The mespp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MESPP_GRAPH_H_
#define MESPP_GRAPH_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mespp {

// Graph vertices are 1-based; index 0 is reserved for the capture state in
// belief vectors and capture matrices.
using Vertex = int;
using Edge = std::pair<Vertex, Vertex>;

// Undirected simple graph. Construction rejects self-loops, duplicate edges
// and out-of-range endpoints; connectivity is checked separately because
// some callers (distance computation) report the unreachable pair themselves.
class Graph {
 public:
  Graph(int n, const std::vector<Edge>& edges);

  int n() const { return n_; }
  // Edges normalized to u < v, sorted.
  const std::vector<Edge>& edges() const { return edges_; }
  // delta(v), ascending.
  const std::vector<Vertex>& neighbors(Vertex v) const;
  // delta'(v) = delta(v) + {v}, ascending.
  const std::vector<Vertex>& neighbors_closed(Vertex v) const;
  bool adjacent(Vertex u, Vertex v) const;
  bool valid(Vertex v) const { return v >= 1 && v <= n_; }
  void check_vertex(Vertex v) const;
  bool connected() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::vector<Vertex>> closed_;
};

// rows x cols 4-connected grid, row-major labels: (r, c) -> r * cols + c + 1.
Graph build_grid(int rows, int cols);

std::vector<Vertex> neighbors_closed(const Graph& g, Vertex v);

// Hop distances between all vertex pairs.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  DistanceMatrix(int n, std::vector<int> hops);

  int n() const { return n_; }
  int operator()(Vertex u, Vertex v) const {
    return hops_[static_cast<size_t>((u - 1) * n_ + (v - 1))];
  }
  int eccentricity(Vertex v) const;

 private:
  int n_ = 0;
  std::vector<int> hops_;
};

// Single-source BFS hop counts; unreachable vertices get -1. Index 0 unused.
std::vector<int> bfs_hops(const Graph& g, Vertex source);

// Throws DisconnectedGraphError naming the first unreachable pair found.
DistanceMatrix all_pairs_distances(const Graph& g);

// States (v, t) with d(start, v) <= t <= horizon, i.e. the places a searcher
// leaving `start` at t = 0 can occupy at each step.
class ReachableSet {
 public:
  ReachableSet(const Graph& g, Vertex start, int horizon);

  Vertex start() const { return start_; }
  int horizon() const { return horizon_; }
  bool contains(Vertex v, int t) const;
  // V(t): ascending vertex list.
  const std::vector<Vertex>& at(int t) const { return by_time_[t]; }
  // V(v): times at which v is reachable (empty if never within horizon).
  std::vector<int> times(Vertex v) const;
  // Earliest time v is reachable, or -1.
  int first_time(Vertex v) const { return first_[v]; }
  size_t size() const;

 private:
  Vertex start_;
  int horizon_;
  std::vector<int> first_;
  std::vector<std::vector<Vertex>> by_time_;
};

ReachableSet reachable_states(const Graph& g, Vertex start, int horizon);

// Parses the line-oriented graph format:
//   n=<int>
//   e <u> <v>
// with '#' comments. The result is simple and connected.
Graph load_graph(std::string_view text);
Graph load_graph_file(const std::string& path);
std::string write_graph(const Graph& g);

}  // namespace mespp

#endif  // MESPP_GRAPH_H_
