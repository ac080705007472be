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

#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>

#include <fmt/format.h>

#include "mespp/errors.h"
#include "mespp/lp_format.h"
#include "mespp/milp.h"
#include "mespp/solver.h"
#include "test_util.h"

namespace mespp {
namespace {

using testing::make_instance;
using testing::milp_spec;
using testing::path_graph;
using testing::Spec;

std::string temp_file(const std::string& name, const std::string& text) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream(path) << text;
  return path.string();
}

TEST_CASE("solution file parsing") {
  SolutionFile sol = parse_solution(
      "# HiGHS\nstatus optimal\nobjective 1.5\ngap 0\nx_1_0_1 1\n"
      "beta_c_1 0.5  # trailing\n\n");
  CHECK(sol.status == SolveStatus::kOptimal);
  CHECK(sol.objective == 1.5);
  CHECK(sol.gap == 0.0);
  CHECK(sol.values.at("x_1_0_1") == 1.0);
  CHECK(sol.values.at("beta_c_1") == 0.5);
  CHECK_THROWS_AS(parse_solution("x_1_0_1\n"), ParseError);
  CHECK_THROWS_AS(parse_solution("x_1_0_1 abc\n"), ParseError);
  CHECK_THROWS_AS(parse_solution("status maybe\n"), ParseError);
  CHECK(parse_status("feasible-timeout") == SolveStatus::kFeasibleTimeout);
  CHECK(status_name(SolveStatus::kInfeasible) == "infeasible");
}

TEST_CASE("command templates") {
  SolverSpec spec;
  spec.timeout_seconds = 10;
  spec.threads = 4;
  spec.gap_tolerance = 1e-6;
  spec.presolve = false;
  CHECK(expand_command("s {lp} {sol} {timeout} {threads} {gap} {presolve}",
                       "/a.lp", "/b.sol", spec) ==
        "s '/a.lp' '/b.sol' 10 4 1e-06 off");
}

TEST_CASE("path counting") {
  CHECK(count_paths(path_graph(3), 1, 2) == 5);
  CHECK(count_paths(path_graph(3), 2, 1) == 3);
  CHECK(count_paths(build_grid(1, 1), 1, 7) == 1);
  CHECK(count_paths(build_grid(10, 10), 1, 0) == 1);
}

// Independent recursive count of delta'-walks.
double walks(const Graph& g, Vertex v, int steps) {
  if (steps == 0) return 1;
  double total = 0;
  for (Vertex w : g.neighbors_closed(v)) total += walks(g, w, steps - 1);
  return total;
}

TEST_CASE("enumeration fixture") {
  Instance inst = testing::path_fixture();
  SolveResult r = solve_enumeration(inst);
  CHECK(r.status == SolveStatus::kOptimal);
  CHECK(r.leaves == 5);
  CHECK(std::abs(r.objective - 1.5) <= 1e-9);
  REQUIRE(r.plan.has_value());
  CHECK(r.plan->paths == std::vector<std::vector<Vertex>>{{1, 2, 3}});

  Spec two;
  two.starts = {1, 1};
  SolveResult r2 = solve_enumeration(make_instance(two));
  CHECK(r2.leaves == 25);
  CHECK(std::abs(r2.objective - 1.5) <= 1e-9);
  // The lexicographically smallest optimum keeps searcher 1 in place.
  CHECK(r2.plan->paths[0] == std::vector<Vertex>{1, 1, 1});
}

TEST_CASE("property: enumeration scores every joint path exactly once") {
  Rng rng = make_rng(41, 0);
  for (int trial = 0; trial < 60; ++trial) {
    Spec s;
    s.graph = testing::random_graph(rng);
    int n = s.graph.n();
    s.starts = {uniform_int(rng, 1, n)};
    if (uniform01(rng) < 0.5) s.starts.push_back(uniform_int(rng, 1, n));
    s.support = {uniform_int(rng, 1, n)};
    s.horizon = uniform_int(rng, 1, 3);
    s.stay = 0.5;
    Instance inst = make_instance(s);
    double expected = 1;
    for (Vertex v : s.starts) expected *= walks(s.graph, v, s.horizon);
    CHECK(enumeration_size(inst) == expected);
    SolveResult r = solve_enumeration(inst);
    CHECK(static_cast<double>(r.leaves) == expected);
    CHECK(std::abs(evaluate_joint_plan(inst, *r.plan).reward - r.objective) <=
          1e-12);
  }
}

TEST_CASE("property: enumeration optimum dominates random plans") {
  Rng rng = make_rng(42, 0);
  for (int trial = 0; trial < 40; ++trial) {
    Spec s;
    s.graph = testing::random_graph(rng);
    int n = s.graph.n();
    s.starts = {uniform_int(rng, 1, n), uniform_int(rng, 1, n)};
    s.support = {uniform_int(rng, 1, n), uniform_int(rng, 1, n)};
    std::sort(s.support.begin(), s.support.end());
    s.support.erase(std::unique(s.support.begin(), s.support.end()),
                    s.support.end());
    s.horizon = uniform_int(rng, 1, 3);
    s.stay = 0.3;
    s.zeta = 0.25;
    Instance inst = make_instance(s);
    double best = solve_enumeration(inst).objective;
    for (int k = 0; k < 20; ++k) {
      JointPlan plan;
      for (Vertex start : s.starts) {
        std::vector<Vertex> path{start};
        for (int t = 0; t < s.horizon; ++t) {
          const auto& nb = s.graph.neighbors_closed(path.back());
          path.push_back(
              nb[uniform_int(rng, 0, static_cast<int>(nb.size()) - 1)]);
        }
        plan.paths.push_back(path);
      }
      REQUIRE(evaluate_joint_plan(inst, plan).reward <= best + 1e-12);
    }
  }
}

TEST_CASE("enumeration cap") {
  Spec s;
  s.graph = build_grid(10, 10);
  s.starts = {45, 46, 55};
  s.support = {1};
  s.horizon = 6;
  Instance inst = make_instance(s);
  CHECK_THROWS_AS(enumeration_size(inst), EnumerationCapError);
  try {
    solve_enumeration(inst);
    FAIL("expected the cap to trigger");
  } catch (const EnumerationCapError& e) {
    CHECK(e.estimate() > 1e9);
    CHECK(e.cap() == 1e7);
  }
  EnumerationOptions pinned;
  pinned.fixed = {std::vector<Vertex>(7, 45), std::vector<Vertex>(7, 46),
                  std::nullopt};
  CHECK(enumeration_size(inst, pinned) == count_paths(s.graph, 55, 6));
}

TEST_CASE("enumeration with pinned searchers") {
  Spec s;
  s.starts = {1, 2};
  s.support = {1, 3};
  s.horizon = 1;
  Instance inst = make_instance(s);
  EnumerationOptions opts;
  opts.fixed = {std::vector<Vertex>{1, 1}, std::nullopt};
  SolveResult r = solve_enumeration(inst, opts);
  CHECK(r.leaves == 3);
  CHECK(r.plan->paths[0] == std::vector<Vertex>{1, 1});
  CHECK(r.plan->paths[1] == std::vector<Vertex>{2, 3});
  CHECK(r.objective == doctest::Approx(1.0));
  opts.fixed = {std::vector<Vertex>{1, 3}, std::nullopt};
  CHECK_THROWS(solve_enumeration(inst, opts));
}

TEST_CASE("decoding thresholds") {
  Spec s;
  s.graph = path_graph(2);
  s.support = {2};
  s.horizon = 1;
  Instance inst = make_instance(s);
  MilpModel m = build_sv_model(inst);
  SolveResult r;
  r.status = SolveStatus::kOptimal;
  r.values.assign(m.variables().size(), 0.0);
  r.values[m.require("x_1_0_1")] = 1.0;
  r.values[m.require("x_1_1_1")] = 0.4;
  r.values[m.require("x_1_1_2")] = 0.6;
  CHECK(decode_paths(m, r).paths == std::vector<std::vector<Vertex>>{{1, 2}});

  r.values[m.require("x_1_1_1")] = 0.6;
  CHECK_THROWS_AS(decode_paths(m, r), DecodeError);
  r.values[m.require("x_1_1_1")] = 0.1;
  r.values[m.require("x_1_1_2")] = 0.2;
  CHECK_THROWS_AS(decode_paths(m, r), DecodeError);
  r.values.resize(2);
  CHECK_THROWS_AS(decode_paths(m, r), DecodeError);
}

TEST_CASE("external solver on the fixture") {
  Instance inst = testing::path_fixture();
  MilpModel m = build_model(inst);
  SolveResult r = solve_external(m, milp_spec());
  INFO(r.diagnostics);
  REQUIRE(r.status == SolveStatus::kOptimal);
  CHECK(std::abs(r.objective - 1.5) <= 1e-6);
  CHECK(decode_paths(m, r).paths == std::vector<std::vector<Vertex>>{{1, 2, 3}});
  CHECK(r.wall_seconds > 0.0);
}

TEST_CASE("external solver with every path pinned") {
  Spec s;
  s.graph = build_grid(2, 3);
  s.starts = {1, 6};
  s.support = {2, 3, 4};
  s.horizon = 3;
  s.stay = 0.4;
  s.gamma = 0.9;
  s.zeta = 0.3;
  s.mode = CaptureMode::kHopRadius;
  s.radius = 1;
  Instance inst = make_instance(s);
  JointPlan plan{{{1, 2, 5, 5}, {6, 6, 3, 2}}};
  MilpModel m = fix_searcher_path(
      fix_searcher_path(build_model(inst), 1, plan.paths[0]), 2, plan.paths[1]);
  SolveResult r = solve_external(m, milp_spec());
  INFO(r.diagnostics);
  REQUIRE(r.status == SolveStatus::kOptimal);
  PlanEvaluation eval = evaluate_joint_plan(inst, plan);
  CHECK(std::abs(r.objective - eval.reward) <= 1e-6);
  CHECK(decode_paths(m, r) == plan);
  // The continuous belief variables reproduce the belief recursion.
  for (int t = 0; t <= 3; ++t) {
    CHECK(std::abs(r.values[m.require(fmt::format("beta_c_{}", t))] -
                   eval.beliefs[t].capture()) <= 1e-6);
    for (Vertex v = 1; v <= 6; ++v) {
      CHECK(std::abs(r.values[m.require(fmt::format("beta_{}_{}", t, v))] -
                     eval.beliefs[t][v]) <= 1e-6);
    }
  }
}

TEST_CASE("infeasible probe") {
  MilpModel m = build_model(testing::path_fixture());
  int x = m.require("x_1_1_2");
  m.add_constraint({"probe_on", {{x, 1.0}}, Relation::kEqual, 1.0});
  m.add_constraint({"probe_off", {{x, 1.0}}, Relation::kEqual, 0.0});
  SolveResult r = solve_external(m, milp_spec());
  CHECK(r.status == SolveStatus::kInfeasible);
  CHECK_FALSE(r.has_incumbent());
}

TEST_CASE("external solver failure modes") {
  MilpModel m = build_model(testing::path_fixture());
  SolverSpec spec = milp_spec();

  spec.command = "echo boom; exit 3";
  SolveResult failed = solve_external(m, spec);
  CHECK(failed.status == SolveStatus::kError);
  CHECK(failed.diagnostics.find("boom") != std::string::npos);

  spec.command = "true";
  CHECK(solve_external(m, spec).status == SolveStatus::kError);

  spec.command = "echo 'x_1_0_1 what' > {sol}";
  CHECK(solve_external(m, spec).status == SolveStatus::kError);

  std::string incumbent = temp_file(
      "mespp_timeout.sol",
      "status feasible-timeout\nobjective 1\ngap 0.5\nx_1_0_1 1\n"
      "x_1_1_2 1\nx_1_2_2 1\nbeta_c_1 0.5\nbeta_c_2 0.5\n");
  spec.command = "cp " + incumbent + " {sol}";
  SolveResult timed = solve_external(m, spec);
  CHECK(timed.status == SolveStatus::kFeasibleTimeout);
  CHECK(timed.objective == 1.0);
  CHECK(timed.mip_gap == 0.5);
  CHECK(decode_paths(m, timed).paths ==
        std::vector<std::vector<Vertex>>{{1, 2, 2}});

  std::string bare = temp_file("mespp_bare.sol",
                               "x_1_0_1 1\nx_1_1_2 1\nx_1_2_3 1\nbeta_c_1 0.5\n"
                               "beta_c_2 1\n");
  spec.command = "cp " + bare + " {sol}";
  SolveResult computed = solve_external(m, spec);
  CHECK(computed.status == SolveStatus::kOptimal);
  CHECK(computed.objective == 1.5);
}

TEST_CASE("solve dispatch") {
  Instance inst = testing::path_fixture();
  MilpModel m = build_model(inst);
  SolveResult e = solve(inst, m, testing::enumeration_spec());
  CHECK(e.solver == "enumeration");
  CHECK(decode_paths(m, e).paths == std::vector<std::vector<Vertex>>{{1, 2, 3}});
}

TEST_CASE("property: MILP kinds agree with enumeration on small instances") {
  Rng rng = make_rng(43, 0);
  for (int trial = 0; trial < 12; ++trial) {
    Spec s;
    s.graph = uniform01(rng) < 0.5 ? path_graph(uniform_int(rng, 2, 5))
                                   : build_grid(2, uniform_int(rng, 2, 3));
    int n = s.graph.n();
    s.starts = {uniform_int(rng, 1, n)};
    if (trial % 2 == 1) s.starts.push_back(uniform_int(rng, 1, n));
    s.support = {uniform_int(rng, 1, n), uniform_int(rng, 1, n)};
    std::sort(s.support.begin(), s.support.end());
    s.support.erase(std::unique(s.support.begin(), s.support.end()),
                    s.support.end());
    s.horizon = uniform_int(rng, 1, 3);
    s.stay = uniform01(rng) < 0.5 ? 1.0 : 0.5;
    s.gamma = 0.95;
    switch (trial % 3) {
      case 0:
        break;
      case 1:
        s.mode = CaptureMode::kHopRadius;
        s.radius = 1;
        break;
      default:
        s.zeta = 0.3;
        s.mode = CaptureMode::kHopRadius;
        s.radius = uniform_int(rng, 0, 1);
    }
    Instance inst = make_instance(s);
    MilpModel m = build_model(inst);
    SolveResult milp = solve_external(m, milp_spec());
    INFO(milp.diagnostics);
    REQUIRE(milp.status == SolveStatus::kOptimal);
    SolveResult en = solve_enumeration(inst);
    CHECK(std::abs(milp.objective - en.objective) <= 1e-6);
    CHECK(std::abs(evaluate_joint_plan(inst, decode_paths(m, milp)).reward -
                   milp.objective) <= 1e-6);
  }
}

}  // namespace
}  // namespace mespp
