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
#include <set>
#include <sstream>

#include "mespp/errors.h"
#include "mespp/simulator.h"
#include "test_util.h"

namespace mespp {
namespace {

using testing::make_instance;
using testing::path_graph;
using testing::Spec;

// |k/n - p| within three binomial standard errors.
bool within_3se(int hits, int trials, double p) {
  double se = std::sqrt(p * (1 - p) / trials);
  return std::abs(static_cast<double>(hits) / trials - p) <= 3 * se;
}

size_t count_lines(const std::string& text) {
  return static_cast<size_t>(std::count(text.begin(), text.end(), '\n'));
}

TEST_CASE("rng helpers") {
  Rng a = make_rng(5, 3);
  Rng b = make_rng(5, 3);
  Rng c = make_rng(5, 4);
  CHECK(a() == b());
  CHECK(a() != c());
  Rng r = make_rng(1, 0);
  std::set<int> seen;
  for (int i = 0; i < 2000; ++i) {
    double u = uniform01(r);
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    int k = uniform_int(r, -2, 2);
    REQUIRE(k >= -2);
    REQUIRE(k <= 2);
    seen.insert(k);
  }
  CHECK(seen.size() == 5);
  CHECK(uniform_int(r, 7, 7) == 7);
  CHECK_THROWS(uniform_int(r, 2, 1));
}

TEST_CASE("target start sampling") {
  Rng rng = make_rng(61, 0);
  BeliefVector point({0, 0, 0, 1});
  for (int i = 0; i < 100; ++i) CHECK(sample_target_start(point, rng) == 3);

  BeliefVector pair = BeliefVector::uniform(3, {2, 3});
  Rng r1 = make_rng(62, 0);
  Rng r2 = make_rng(62, 0);
  for (int i = 0; i < 50; ++i) {
    CHECK(sample_target_start(pair, r1) == sample_target_start(pair, r2));
  }

  BeliefVector skewed({0, 0.1, 0.2, 0.7});
  const int trials = 100000;
  int hits[4] = {0, 0, 0, 0};
  for (int i = 0; i < trials; ++i) ++hits[sample_target_start(skewed, rng)];
  CHECK(within_3se(hits[1], trials, 0.1));
  CHECK(within_3se(hits[2], trials, 0.2));
  CHECK(within_3se(hits[3], trials, 0.7));

  CHECK_THROWS_AS(sample_target_start(BeliefVector({0.5, 0.5}), rng), Error);
}

TEST_CASE("target motion sampling") {
  Rng rng = make_rng(63, 0);
  MotionMatrix walk = motion_random_walk(path_graph(3), 0.4);
  const int trials = 100000;
  int hits[4] = {0, 0, 0, 0};
  for (int i = 0; i < trials; ++i) ++hits[sample_motion(walk, 2, rng)];
  CHECK(within_3se(hits[1], trials, 0.3));
  CHECK(within_3se(hits[2], trials, 0.4));
  CHECK(within_3se(hits[3], trials, 0.3));
  MotionMatrix still = motion_static(3);
  for (int i = 0; i < 100; ++i) CHECK(sample_motion(still, 3, rng) == 3);
}

MissionState start_state(const Instance& inst, Vertex target) {
  return MissionState{0, target, inst.starts, inst.initial_belief, false};
}

TEST_CASE("perfect sensing always detects a covered target") {
  Spec s;
  s.support = {2};
  Instance inst = make_instance(s);
  Rng rng = make_rng(64, 0);
  for (int i = 0; i < 1000; ++i) {
    MissionState next = step_mission(inst, start_state(inst, 2), {2}, rng);
    REQUIRE(next.captured);
    REQUIRE(next.time == 1);
    REQUIRE(next.target == 2);
    REQUIRE(next.belief.capture() == 1.0);
  }
  MissionState miss = step_mission(inst, start_state(inst, 2), {1}, rng);
  CHECK_FALSE(miss.captured);
  CHECK_THROWS_AS(step_mission(inst, start_state(inst, 2), {3}, rng),
                  IllegalPlanError);
  CHECK_THROWS_AS(step_mission(inst, start_state(inst, 2), {1, 2}, rng),
                  IllegalPlanError);
}

TEST_CASE("false-negative detection rates") {
  Spec one;
  one.graph = path_graph(2);
  one.support = {1};
  one.zeta = 0.3;
  Instance single = make_instance(one);
  Spec two = one;
  two.starts = {1, 1};
  Instance pair = make_instance(two);

  const int trials = 100000;
  Rng rng = make_rng(65, 0);
  int single_hits = 0;
  int pair_hits = 0;
  for (int i = 0; i < trials; ++i) {
    if (step_mission(single, start_state(single, 1), {1}, rng).captured) {
      ++single_hits;
    }
    if (step_mission(pair, start_state(pair, 1), {1, 1}, rng).captured) {
      ++pair_hits;
    }
  }
  CHECK(within_3se(single_hits, trials, 0.7));
  CHECK(within_3se(pair_hits, trials, 0.91));
}

TEST_CASE("fixed-plan capture frequency matches the final capture belief") {
  Spec s;
  s.graph = build_grid(3, 3);
  s.starts = {1, 9};
  s.support = {2, 5, 6, 8};
  s.horizon = 4;
  s.stay = 0.5;
  s.zeta = 0.2;
  s.mode = CaptureMode::kHopRadius;
  s.radius = 1;
  Instance inst = make_instance(s);
  JointPlan plan{{{1, 2, 5, 4, 4}, {9, 9, 6, 5, 8}}};
  double predicted = evaluate_joint_plan(inst, plan).beliefs.back().capture();
  Rng rng = make_rng(66, 0);
  const int trials = 10000;
  int hits = 0;
  for (int i = 0; i < trials; ++i) {
    SimulatedCapture c = simulate_fixed_plan(inst, plan, rng);
    if (c.captured) {
      ++hits;
      REQUIRE(c.time >= 1);
      REQUIRE(c.time <= 4);
    } else {
      REQUIRE(c.time == 5);
    }
  }
  CHECK(within_3se(hits, trials, predicted));
}

TEST_CASE("simulated receding missions") {
  Spec s;
  s.graph = path_graph(4);
  s.support = {3, 4};
  s.horizon = 3;
  s.deadline = 3;
  Instance inst = make_instance(s);
  Rng rng = make_rng(67, 0);
  for (int i = 0; i < 20; ++i) {
    MissionRecord rec = run_simulated_mission(
        inst, testing::enumeration_spec(), Regime::kDistributed, rng);
    CHECK(rec.mission_time <= 3);
    CHECK(rec.beliefs.size() == static_cast<size_t>(rec.mission_time) + 1);
    if (rec.captured) CHECK(rec.capture_time == rec.mission_time);
  }
}

TEST_CASE("aggregates") {
  Aggregate a = aggregate({1, 2, 3, 4});
  CHECK(a.count == 4);
  CHECK(a.mean == 2.5);
  CHECK(a.median == 2.5);
  CHECK(a.sem == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  Aggregate b = aggregate({7});
  CHECK(b.mean == 7);
  CHECK(b.median == 7);
  CHECK(b.sem == 0);
  CHECK(aggregate({}).count == 0);
  CHECK(aggregate({3, 1, 2}).median == 2);
}

ExperimentConfig small_experiment() {
  ExperimentConfig e;
  e.id = "unit";
  e.digest = "feedface";
  e.env = std::make_shared<const Environment>(build_grid(3, 3));
  e.grid_rows = 3;
  e.grid_cols = 3;
  e.searchers = 2;
  e.motion = MotionKind::kRandomWalk;
  e.stay_prob = 0.5;
  e.belief_min = 2;
  e.belief_max = 3;
  e.deadline = 3;
  e.horizon = 3;
  e.zeta = 0.1;
  e.planners = {PlannerKind::kEnumeration,
                PlannerKind::kDistributedEnumeration};
  e.instances = 4;
  e.seed = 99;
  return e;
}

TEST_CASE("uniform instance generation") {
  ExperimentConfig e = small_experiment();
  for (int i = 0; i < 30; ++i) {
    Instance inst = generate_instance(e, i);
    int support = 0;
    for (Vertex v = 1; v <= 9; ++v) {
      if (inst.initial_belief[v] > 0) ++support;
    }
    CHECK(support >= 2);
    CHECK(support <= 3);
    CHECK(inst.initial_belief.capture() == 0.0);
    CHECK(inst.searchers() == 2);
    CHECK(inst.capture.zeta == std::vector<double>{0.1, 0.1});
    CHECK(inst.canonical() == generate_instance(e, i).canonical());
  }
  CHECK(generate_instance(e, 0).canonical() !=
        generate_instance(e, 1).canonical());
}

TEST_CASE("corner-region instance generation") {
  ExperimentConfig e = small_experiment();
  e.env = std::make_shared<const Environment>(build_grid(10, 10));
  e.grid_rows = 10;
  e.grid_cols = 10;
  e.scenario = Scenario::kCornerRegions;
  e.searchers = 3;
  for (int i = 0; i < 50; ++i) {
    Instance inst = generate_instance(e, i);
    int corners[4] = {0, 0, 0, 0};
    for (Vertex v = 1; v <= 100; ++v) {
      if (inst.initial_belief[v] == 0) continue;
      CHECK(inst.initial_belief[v] == 0.25);
      int r = (v - 1) / 10;
      int c = (v - 1) % 10;
      bool top = r < 3;
      bool bottom = r >= 7;
      bool left = c < 3;
      bool right = c >= 7;
      REQUIRE(((top || bottom) && (left || right)));
      ++corners[(bottom ? 2 : 0) + (right ? 1 : 0)];
    }
    for (int k : corners) CHECK(k == 1);
    for (Vertex s : inst.starts) {
      int r = (s - 1) / 10;
      int c = (s - 1) % 10;
      CHECK(r >= 3);
      CHECK(r <= 6);
      CHECK(c >= 3);
      CHECK(c <= 6);
      CHECK(inst.initial_belief[s] == 0.0);
    }
  }
  e.env = std::make_shared<const Environment>(build_grid(5, 5));
  e.grid_rows = 5;
  e.grid_cols = 5;
  CHECK_THROWS_AS(generate_instance(e, 0), ConfigError);
}

TEST_CASE("experiments are seed-deterministic") {
  ExperimentConfig e = small_experiment();
  ExperimentSummary a = run_experiment(e);
  ExperimentSummary b = run_experiment(e);
  CHECK(missions_csv(a) == missions_csv(b));
  CHECK(summary_csv(a) == summary_csv(b));
  CHECK(a.rows.size() == 8);
  CHECK(a.failures == 0);
  CHECK(a.has_reward_loss);
  CHECK(a.relative_reward_loss.count == 4);
  CHECK(a.relative_reward_loss.mean >= -1e-12);
  for (const auto& row : a.rows) {
    CHECK(row.mission_time <= e.deadline);
    if (row.captured) CHECK(row.capture_time <= e.deadline);
  }
  e.seed = 100;
  CHECK(missions_csv(run_experiment(e)) != missions_csv(a));
}

TEST_CASE("planners share each instance's target realization") {
  ExperimentConfig e = small_experiment();
  e.planners = {PlannerKind::kEnumeration, PlannerKind::kEnumeration};
  ExperimentSummary s = run_experiment(e);
  for (size_t i = 0; i + 1 < s.rows.size(); i += 2) {
    CHECK(s.rows[i].mission_time == s.rows[i + 1].mission_time);
    CHECK(s.rows[i].captured == s.rows[i + 1].captured);
  }
}

TEST_CASE("a one-instance experiment summarizes that mission") {
  ExperimentConfig e = small_experiment();
  e.instances = 1;
  e.planners = {PlannerKind::kDistributedEnumeration};
  ExperimentSummary s = run_experiment(e);
  REQUIRE(s.rows.size() == 1);
  REQUIRE(s.planners.size() == 1);
  CHECK(s.planners[0].reward_t0.mean == s.rows[0].reward_t0);
  CHECK(s.planners[0].mission_time.mean == s.rows[0].mission_time);
  CHECK(s.planners[0].mission_time.sem == 0.0);
  CHECK_FALSE(s.has_reward_loss);
  CHECK(count_lines(missions_csv(s)) == 2);
  CHECK(count_lines(summary_csv(s)) == 2);
}

TEST_CASE("planner failures are recorded, not fatal") {
  ExperimentConfig e = small_experiment();
  e.instances = 2;
  e.planners = {PlannerKind::kCentralized, PlannerKind::kEnumeration};
  e.centralized_solver.command = "exit 2";
  ExperimentSummary s = run_experiment(e);
  CHECK(s.rows.size() == 4);
  CHECK(s.failures == 2);
  CHECK(s.rows[0].failed);
  CHECK_FALSE(s.rows[0].error.empty());
  CHECK_FALSE(s.rows[1].failed);
  std::string csv = missions_csv(s);
  CHECK(csv.find(",failed,") != std::string::npos);
}

TEST_CASE("CSV schemas carry provenance") {
  ExperimentConfig e = small_experiment();
  e.instances = 2;
  ExperimentSummary s = run_experiment(e);
  for (const std::string& csv : {missions_csv(s), summary_csv(s),
                                 timing_csv(s), summary_timing_csv(s)}) {
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    CHECK(header.find("config_digest") != std::string::npos);
    CHECK(header.find("seed") != std::string::npos);
    for (std::string line; std::getline(in, line);) {
      CHECK(line.find("unit,feedface,99,") == 0);
    }
  }
  CHECK(summary_csv(s).find("relative_reward_loss_mean") != std::string::npos);
  CHECK(summary_csv(s).find("mt19937_64") != std::string::npos);
  CHECK(summary_timing_csv(s).find("solve_seconds_t0_mean") !=
        std::string::npos);
  CHECK(summary_timing_csv(s).find(",distributed-enumeration,") !=
        std::string::npos);
  CHECK(count_lines(timing_csv(s)) == 5);
}

TEST_CASE("name tables") {
  for (auto k : {PlannerKind::kCentralized, PlannerKind::kDistributed,
                 PlannerKind::kEnumeration,
                 PlannerKind::kDistributedEnumeration}) {
    CHECK(parse_planner(planner_name(k)) == k);
  }
  CHECK_THROWS_AS(parse_planner("greedy"), ConfigError);
  CHECK(parse_scenario("corner-regions") == Scenario::kCornerRegions);
  CHECK_THROWS_AS(parse_scenario("x"), ConfigError);
}

}  // namespace
}  // namespace mespp
