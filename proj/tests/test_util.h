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

// Shared fixtures for the unit tests and the acceptance harness.

#ifndef MESPP_TESTS_TEST_UTIL_H_
#define MESPP_TESTS_TEST_UTIL_H_

#include <memory>
#include <vector>

#include "mespp/instance.h"
#include "mespp/simulator.h"
#include "mespp/solver.h"

namespace mespp::testing {

inline Graph path_graph(int n) {
  std::vector<Edge> edges;
  for (int v = 1; v < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, edges);
}

inline Graph star_graph(int leaves) {
  std::vector<Edge> edges;
  for (int v = 2; v <= leaves + 1; ++v) edges.emplace_back(1, v);
  return Graph(leaves + 1, edges);
}

struct Spec {
  Graph graph = path_graph(3);
  std::vector<Vertex> starts{1};
  std::vector<Vertex> support{2, 3};
  int horizon = 2;
  int deadline = -1;  // defaults to horizon
  double gamma = 1.0;
  double zeta = 0.0;
  CaptureMode mode = CaptureMode::kSameVertex;
  int radius = 0;
  double stay = 1.0;  // 1 means static target
};

inline Instance make_instance(const Spec& s) {
  auto env = std::make_shared<const Environment>(s.graph);
  const int n = s.graph.n();
  Instance inst{env,
                s.starts,
                CaptureConfig{s.mode, s.radius,
                              std::vector<double>(s.starts.size(), s.zeta)},
                s.stay >= 1.0 ? motion_static(n)
                              : motion_random_walk(s.graph, s.stay),
                BeliefVector::uniform(n, s.support),
                s.deadline < 0 ? s.horizon : s.deadline,
                s.horizon,
                s.gamma};
  inst.validate();
  return inst;
}

// The path 1-2-3 fixture: one searcher at 1, static target uniform on {2, 3}.
inline Instance path_fixture() { return make_instance(Spec{}); }

// Random belief with a few nonzero entries and some capture mass.
inline BeliefVector random_belief(int n, Rng& rng, bool with_capture) {
  std::vector<double> v(static_cast<size_t>(n) + 1, 0.0);
  if (with_capture) v[0] = uniform01(rng);
  for (int i = 1; i <= n; ++i) v[i] = uniform01(rng) < 0.6 ? uniform01(rng) : 0;
  v[1 + uniform_int(rng, 0, n - 1)] += 0.1;
  double sum = 0;
  for (double x : v) sum += x;
  for (double& x : v) x /= sum;
  return BeliefVector(v);
}

// Random graph: a connected grid of at most 4x4 or a random tree plus chords.
inline Graph random_graph(Rng& rng) {
  if (uniform01(rng) < 0.5) {
    return build_grid(uniform_int(rng, 1, 4), uniform_int(rng, 2, 4));
  }
  int n = uniform_int(rng, 2, 9);
  std::vector<Edge> edges;
  for (int v = 2; v <= n; ++v) edges.emplace_back(uniform_int(rng, 1, v - 1), v);
  for (int k = uniform_int(rng, 0, 3); k > 0; --k) {
    int a = uniform_int(rng, 1, n);
    int b = uniform_int(rng, 1, n);
    if (a == b) continue;
    Edge e{std::min(a, b), std::max(a, b)};
    if (std::find(edges.begin(), edges.end(), e) == edges.end()) {
      edges.push_back(e);
    }
  }
  return Graph(n, edges);
}

// External-solver settings used by every test that calls the MILP solver.
inline SolverSpec milp_spec(double timeout = 600.0) {
  SolverSpec spec;
  spec.command = MESPP_TEST_SOLVER_CMD;
  spec.timeout_seconds = timeout;
  spec.threads = 1;
  return spec;
}

inline SolverSpec enumeration_spec() {
  SolverSpec spec;
  spec.backend = Backend::kEnumeration;
  return spec;
}

}  // namespace mespp::testing

#endif  // MESPP_TESTS_TEST_UTIL_H_
