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

#include "mespp/graph.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "mespp/errors.h"

namespace mespp {

Graph::Graph(int n, const std::vector<Edge>& edges)
    : n_(n),
      adjacency_(static_cast<size_t>(n) + 1),
      closed_(static_cast<size_t>(n) + 1) {
  if (n < 1) throw InvariantError(fmt::format("graph needs n >= 1, got {}", n));
  std::set<Edge> seen;
  for (auto [u, v] : edges) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InvariantError(fmt::format("self-loop at vertex {}", u));
    Edge e{std::min(u, v), std::max(u, v)};
    if (!seen.insert(e).second) {
      throw InvariantError(
          fmt::format("duplicate edge {}-{}", e.first, e.second));
    }
  }
  edges_.assign(seen.begin(), seen.end());
  for (auto [u, v] : edges_) {
    adjacency_[u].push_back(v);
    adjacency_[v].push_back(u);
  }
  for (Vertex v = 1; v <= n_; ++v) {
    std::sort(adjacency_[v].begin(), adjacency_[v].end());
    closed_[v] = adjacency_[v];
    closed_[v].insert(
        std::lower_bound(closed_[v].begin(), closed_[v].end(), v), v);
  }
}

const std::vector<Vertex>& Graph::neighbors(Vertex v) const {
  check_vertex(v);
  return adjacency_[v];
}

const std::vector<Vertex>& Graph::neighbors_closed(Vertex v) const {
  check_vertex(v);
  return closed_[v];
}

bool Graph::adjacent(Vertex u, Vertex v) const {
  const auto& nb = neighbors(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

void Graph::check_vertex(Vertex v) const {
  if (!valid(v)) throw InvalidVertexError(v, n_);
}

bool Graph::connected() const {
  auto hops = bfs_hops(*this, 1);
  return std::none_of(hops.begin() + 1, hops.end(),
                      [](int h) { return h < 0; });
}

Graph build_grid(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw InvariantError(fmt::format("grid needs positive dimensions, got {}x{}",
                                     rows, cols));
  }
  std::vector<Edge> edges;
  auto id = [cols](int r, int c) { return r * cols + c + 1; };
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      if (c + 1 < cols) edges.emplace_back(id(r, c), id(r, c + 1));
      if (r + 1 < rows) edges.emplace_back(id(r, c), id(r + 1, c));
    }
  }
  return Graph(rows * cols, edges);
}

std::vector<Vertex> neighbors_closed(const Graph& g, Vertex v) {
  return g.neighbors_closed(v);
}

DistanceMatrix::DistanceMatrix(int n, std::vector<int> hops)
    : n_(n), hops_(std::move(hops)) {}

int DistanceMatrix::eccentricity(Vertex v) const {
  int ecc = 0;
  for (Vertex u = 1; u <= n_; ++u) ecc = std::max(ecc, (*this)(v, u));
  return ecc;
}

std::vector<int> bfs_hops(const Graph& g, Vertex source) {
  g.check_vertex(source);
  std::vector<int> hops(static_cast<size_t>(g.n()) + 1, -1);
  std::deque<Vertex> queue{source};
  hops[source] = 0;
  while (!queue.empty()) {
    Vertex u = queue.front();
    queue.pop_front();
    for (Vertex v : g.neighbors(u)) {
      if (hops[v] < 0) {
        hops[v] = hops[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return hops;
}

DistanceMatrix all_pairs_distances(const Graph& g) {
  const int n = g.n();
  std::vector<int> hops(static_cast<size_t>(n) * n);
  for (Vertex u = 1; u <= n; ++u) {
    auto row = bfs_hops(g, u);
    for (Vertex v = 1; v <= n; ++v) {
      if (row[v] < 0) throw DisconnectedGraphError(u, v);
      hops[static_cast<size_t>((u - 1) * n + (v - 1))] = row[v];
    }
  }
  return DistanceMatrix(n, std::move(hops));
}

ReachableSet::ReachableSet(const Graph& g, Vertex start, int horizon)
    : start_(start), horizon_(horizon) {
  g.check_vertex(start);
  if (horizon < 0) {
    throw InvariantError(fmt::format("negative horizon {}", horizon));
  }
  auto hops = bfs_hops(g, start);
  first_.assign(hops.size(), -1);
  by_time_.resize(static_cast<size_t>(horizon) + 1);
  for (Vertex v = 1; v <= g.n(); ++v) {
    if (hops[v] < 0 || hops[v] > horizon) continue;
    first_[v] = hops[v];
    for (int t = hops[v]; t <= horizon; ++t) by_time_[t].push_back(v);
  }
}

bool ReachableSet::contains(Vertex v, int t) const {
  if (t < 0 || t > horizon_ || v < 1 || v >= static_cast<int>(first_.size())) {
    return false;
  }
  return first_[v] >= 0 && first_[v] <= t;
}

std::vector<int> ReachableSet::times(Vertex v) const {
  std::vector<int> out;
  if (v < 1 || v >= static_cast<int>(first_.size()) || first_[v] < 0) {
    return out;
  }
  for (int t = first_[v]; t <= horizon_; ++t) out.push_back(t);
  return out;
}

size_t ReachableSet::size() const {
  size_t total = 0;
  for (const auto& layer : by_time_) total += layer.size();
  return total;
}

ReachableSet reachable_states(const Graph& g, Vertex start, int horizon) {
  return ReachableSet(g, start, horizon);
}

namespace {

std::string strip_comment(const std::string& line) {
  auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

Graph load_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  std::set<Edge> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip_comment(raw);
    if (blank(line)) continue;
    std::istringstream fields(line);
    if (n < 0) {
      std::string head;
      fields >> head;
      std::string extra;
      if (head.rfind("n=", 0) != 0 || (fields >> extra)) {
        throw ParseError(line_no, "expected 'n=<int>' header");
      }
      try {
        size_t used = 0;
        n = std::stoi(head.substr(2), &used);
        if (used != head.size() - 2) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw ParseError(line_no, fmt::format("bad vertex count '{}'", head));
      }
      if (n < 1) throw ParseError(line_no, "vertex count must be positive");
      continue;
    }
    std::string tag;
    int u = 0;
    int v = 0;
    std::string extra;
    if (!(fields >> tag >> u >> v) || tag != "e" || (fields >> extra)) {
      throw ParseError(line_no, "expected 'e <u> <v>'");
    }
    if (u < 1 || u > n || v < 1 || v > n) {
      throw ParseError(line_no,
                       fmt::format("edge {}-{} outside vertices 1..{}", u, v, n));
    }
    if (u == v) throw ParseError(line_no, fmt::format("self-loop at vertex {}", u));
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
      throw ParseError(line_no, fmt::format("duplicate edge {}-{}", u, v));
    }
    edges.emplace_back(u, v);
  }
  if (n < 0) throw ParseError(0, "missing 'n=<int>' header");
  Graph g(n, edges);
  auto hops = bfs_hops(g, 1);
  for (Vertex v = 1; v <= n; ++v) {
    if (hops[v] < 0) throw DisconnectedGraphError(1, v);
  }
  return g;
}

Graph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(fmt::format("cannot open graph file '{}'", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_graph(buffer.str());
}

std::string write_graph(const Graph& g) {
  std::string out = fmt::format("n={}\n", g.n());
  for (auto [u, v] : g.edges()) out += fmt::format("e {} {}\n", u, v);
  return out;
}

}  // namespace mespp
