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

#include "mespp/errors.h"
#include "mespp/planner.h"
#include "test_util.h"

namespace mespp {
namespace {

using testing::enumeration_spec;
using testing::make_instance;
using testing::milp_spec;
using testing::path_graph;
using testing::Spec;

SolverSpec broken_spec() {
  SolverSpec spec = milp_spec();
  spec.command = "exit 1";
  return spec;
}

Instance random_small(Rng& rng, int max_searchers) {
  Spec s;
  s.graph = uniform01(rng) < 0.5 ? path_graph(uniform_int(rng, 2, 5))
                                 : build_grid(2, uniform_int(rng, 2, 3));
  int n = s.graph.n();
  s.starts.clear();
  for (int k = uniform_int(rng, 1, max_searchers); k > 0; --k) {
    s.starts.push_back(uniform_int(rng, 1, n));
  }
  s.support = {uniform_int(rng, 1, n), uniform_int(rng, 1, n)};
  std::sort(s.support.begin(), s.support.end());
  s.support.erase(std::unique(s.support.begin(), s.support.end()),
                  s.support.end());
  s.horizon = uniform_int(rng, 1, 3);
  s.stay = uniform01(rng) < 0.5 ? 1.0 : 0.5;
  s.gamma = 0.9;
  s.zeta = uniform01(rng) < 0.5 ? 0.0 : 0.2;
  return make_instance(s);
}

TEST_CASE("centralized fixture with both backends") {
  Instance inst = testing::path_fixture();
  for (const SolverSpec& spec : {milp_spec(), enumeration_spec()}) {
    PlanningOutcome out = plan_centralized(inst, spec);
    CHECK(out.plan.paths == std::vector<std::vector<Vertex>>{{1, 2, 3}});
    CHECK(std::abs(out.objective - 1.5) <= 1e-6);
    CHECK(std::abs(out.oracle_reward - 1.5) <= 1e-12);
    REQUIRE(out.stats.size() == 1);
    CHECK(out.stats[0].status == SolveStatus::kOptimal);
  }
}

TEST_CASE("single-vertex environment") {
  Spec s;
  s.graph = build_grid(1, 1);
  s.support = {1};
  s.horizon = 4;
  s.gamma = 0.9;
  Instance inst = make_instance(s);
  PlanningOutcome out = plan_centralized(inst, milp_spec());
  CHECK(out.plan.paths == std::vector<std::vector<Vertex>>{{1, 1, 1, 1, 1}});
  double expected = 0.9 + 0.81 + 0.729 + 0.6561;
  CHECK(std::abs(out.objective - expected) <= 1e-6);
  CHECK(std::abs(out.oracle_reward - expected) <= 1e-12);
}

TEST_CASE("centralized solver errors propagate") {
  CHECK_THROWS_AS(plan_centralized(testing::path_fixture(), broken_spec()),
                  SolverError);
}

TEST_CASE("property: centralized beats staying put") {
  Rng rng = make_rng(51, 0);
  for (int trial = 0; trial < 40; ++trial) {
    Instance inst = random_small(rng, 2);
    PlanningOutcome out = plan_centralized(inst, enumeration_spec());
    double stay =
        evaluate_joint_plan(inst, stay_put_plan(inst.starts, inst.horizon))
            .reward;
    CHECK(out.oracle_reward >= stay - 1e-12);
  }
}

TEST_CASE("distributed step with one searcher matches centralized") {
  Instance inst = testing::path_fixture();
  PlanningOutcome d = plan_distributed_step(inst, inst.starts, milp_spec());
  PlanningOutcome c = plan_centralized(inst, milp_spec());
  CHECK(d.plan == c.plan);
  CHECK(std::abs(d.objective - c.objective) <= 1e-6);
}

TEST_CASE("implicit coordination splits co-located searchers") {
  Spec s;
  s.starts = {2, 2};
  s.support = {1, 3};
  s.horizon = 1;
  Instance inst = make_instance(s);
  for (const SolverSpec& spec : {milp_spec(), enumeration_spec()}) {
    PlanningOutcome out = plan_distributed_step(inst, inst.starts, spec);
    REQUIRE(out.plan.searchers() == 2);
    Vertex a = out.plan.paths[0][1];
    Vertex b = out.plan.paths[1][1];
    CHECK(((a == 1 && b == 3) || (a == 3 && b == 1)));
    PlanEvaluation eval = evaluate_joint_plan(inst, out.plan);
    CHECK(eval.beliefs[1].capture() == doctest::Approx(1.0));
    CHECK(std::abs(out.objective - out.oracle_reward) <= 1e-6);
    CHECK(out.stats.size() == 2);
  }
}

TEST_CASE("property: distributed objective is the joint oracle reward") {
  Rng rng = make_rng(52, 0);
  for (int trial = 0; trial < 10; ++trial) {
    Instance inst = random_small(rng, 3);
    PlanningOutcome out = plan_distributed_step(inst, inst.starts, milp_spec());
    CHECK(std::abs(out.objective - out.oracle_reward) <= 1e-6);
    double stay =
        evaluate_joint_plan(inst, stay_put_plan(inst.starts, inst.horizon))
            .reward;
    CHECK(out.oracle_reward >= stay - 1e-9);
  }
}

TEST_CASE("property: centralized dominates distributed") {
  Rng rng = make_rng(53, 0);
  for (int trial = 0; trial < 60; ++trial) {
    Instance inst = random_small(rng, 3);
    double c = plan_centralized(inst, enumeration_spec()).oracle_reward;
    double d = plan_distributed_step(inst, inst.starts, enumeration_spec())
                   .oracle_reward;
    CHECK(d <= c + 1e-12);
  }
}

TEST_CASE("failed distributed solves fall back to staying put") {
  Spec s;
  s.starts = {1, 3};
  Instance inst = make_instance(s);
  PlanningOutcome out = plan_distributed_step(inst, inst.starts, broken_spec());
  CHECK(out.plan == stay_put_plan(inst.starts, inst.horizon));
  CHECK(out.stay_put == std::vector<bool>{true, true});
  CHECK(out.stats[0].status == SolveStatus::kError);
}

TEST_CASE("receding horizon stops once capture is certain") {
  Spec s;
  s.support = {2};
  s.horizon = 2;
  s.deadline = 5;
  Instance inst = make_instance(s);
  MissionRecord rec = run_receding_horizon(inst, milp_spec());
  CHECK(rec.captured);
  CHECK(rec.capture_time == 1);
  CHECK(rec.mission_time == 1);
  CHECK(rec.executed.paths == std::vector<std::vector<Vertex>>{{1, 2}});
  CHECK(rec.beliefs.size() == 2);
  CHECK(rec.reward == doctest::Approx(5.0));
}

TEST_CASE("receding horizon with no time left") {
  Spec s;
  s.deadline = 0;
  Instance inst = make_instance(s);
  MissionRecord rec = run_receding_horizon(inst, milp_spec());
  CHECK(rec.mission_time == 0);
  CHECK(rec.beliefs.size() == 1);
  CHECK(rec.executed.horizon() == 0);
  CHECK(rec.solve_seconds.empty());
  CHECK_FALSE(rec.captured);
  CHECK(rec.capture_time == 1);
}

TEST_CASE("receding horizon survives solver failures") {
  Spec s;
  s.deadline = 3;
  s.horizon = 2;
  Instance inst = make_instance(s);
  RecedingOptions centralized;
  centralized.regime = Regime::kCentralized;
  for (const RecedingOptions& opts : {RecedingOptions{}, centralized}) {
    MissionRecord rec = run_receding_horizon(inst, broken_spec(), opts);
    CHECK(rec.mission_time == 3);
    CHECK(rec.executed.paths == std::vector<std::vector<Vertex>>{{1, 1, 1, 1}});
    CHECK(rec.fallbacks == std::vector<int>{1, 1, 1});
    CHECK(rec.reward == 0.0);
  }
}

TEST_CASE("property: replanning a single searcher keeps the optimal reward") {
  Rng rng = make_rng(54, 0);
  for (int trial = 0; trial < 30; ++trial) {
    Instance inst = random_small(rng, 1);
    inst.deadline = inst.horizon;
    double best = plan_centralized(inst, enumeration_spec()).oracle_reward;
    MissionRecord rec = run_receding_horizon(inst, enumeration_spec());
    CHECK(std::abs(rec.reward - best) <= 1e-9);
    for (int t = 1; t <= rec.mission_time; ++t) {
      Vertex a = rec.executed.paths[0][t - 1];
      Vertex b = rec.executed.paths[0][t];
      CHECK((a == b || inst.graph().adjacent(a, b)));
    }
    CHECK(rec.beliefs.size() ==
          static_cast<size_t>(rec.mission_time) + 1);
  }
}

TEST_CASE("receding horizon shrinks the horizon near the deadline") {
  Spec s;
  s.graph = path_graph(5);
  s.support = {5};
  s.horizon = 3;
  s.deadline = 4;
  s.stay = 0.5;
  Instance inst = make_instance(s);
  int calls = 0;
  RecedingOptions opts;
  opts.detect = [&](int t, const std::vector<Vertex>& pos) {
    ++calls;
    CHECK(t == calls);
    CHECK(pos.size() == 1);
    return false;
  };
  MissionRecord rec = run_receding_horizon(inst, milp_spec(), opts);
  CHECK(calls == 4);
  CHECK(rec.mission_time == 4);
  CHECK(rec.solve_seconds.size() == 4);
  CHECK_FALSE(rec.captured);
  CHECK(rec.capture_time == 5);
}

}  // namespace
}  // namespace mespp
