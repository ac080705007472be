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

#ifndef MESPP_SIMULATOR_H_
#define MESPP_SIMULATOR_H_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "mespp/instance.h"
#include "mespp/planner.h"
#include "mespp/solver.h"

namespace mespp {

// The simulator's generator. Its output sequence is fixed by the C++
// standard, and all derived draws below use only raw 64-bit outputs, so runs
// are reproducible across standard libraries.
using Rng = std::mt19937_64;
inline constexpr std::string_view kRngName = "mt19937_64";

// Independent stream for work item `stream` of a run seeded with `seed`.
Rng make_rng(std::uint64_t seed, std::uint64_t stream);
// Uniform double in [0, 1) from the top 53 bits of one draw.
double uniform01(Rng& rng);
// Uniform integer in [lo, hi] by rejection.
int uniform_int(Rng& rng, int lo, int hi);

// Draws the target's initial vertex with probability b_v(0).
// Throws Error when the belief already carries capture mass.
Vertex sample_target_start(const BeliefVector& b0, Rng& rng);
// Draws the target's next vertex from row u of M.
Vertex sample_motion(const MotionMatrix& motion, Vertex u, Rng& rng);

struct MissionState {
  int time = 0;
  Vertex target = 1;
  std::vector<Vertex> searchers;
  BeliefVector belief;
  bool captured = false;
};

// Whether a sensing action at `positions` detects a target on `target`: each
// covering searcher detects independently with probability 1 - zeta^s.
bool sense(const Instance& instance, const std::vector<Vertex>& positions,
           Vertex target, Rng& rng);

// Moves target and searchers one step, samples detection and applies the
// belief recursion (the belief conditioned on no detection so far).
MissionState step_mission(const Instance& instance, const MissionState& state,
                          const std::vector<Vertex>& actions, Rng& rng);

struct SimulatedCapture {
  bool captured = false;
  // Detection time, or plan horizon + 1.
  int time = 0;
};

// Executes a fixed joint plan against one sampled target trajectory.
SimulatedCapture simulate_fixed_plan(const Instance& instance,
                                     const JointPlan& plan, Rng& rng);

// Receding-horizon mission with the target and detections sampled from `rng`.
MissionRecord run_simulated_mission(const Instance& instance,
                                    const SolverSpec& spec, Regime regime,
                                    Rng& rng);

enum class PlannerKind {
  kCentralized,
  kDistributed,
  kEnumeration,
  // Implicit coordination with per-searcher exhaustive enumeration.
  kDistributedEnumeration,
};

std::string_view planner_name(PlannerKind kind);
PlannerKind parse_planner(std::string_view name);

enum class Scenario {
  // Belief support: a random vertex set; starts anywhere.
  kUniform,
  // Belief support: one vertex in each 3x3 corner block of a grid; starts in
  // the grid's central block, away from the support.
  kCornerRegions,
};

std::string_view scenario_name(Scenario s);
Scenario parse_scenario(std::string_view name);

enum class MotionKind { kStatic, kRandomWalk };

struct ExperimentConfig {
  std::string id = "experiment";
  std::string digest;
  std::shared_ptr<const Environment> env;
  // Grid dimensions; required by the corner-region scenario.
  int grid_rows = 0;
  int grid_cols = 0;
  int searchers = 1;
  CaptureMode capture_mode = CaptureMode::kSameVertex;
  int capture_radius = 0;
  double zeta = 0.0;
  MotionKind motion = MotionKind::kStatic;
  double stay_prob = 1.0;
  Scenario scenario = Scenario::kUniform;
  int belief_min = 5;
  int belief_max = 5;
  int deadline = 10;
  int horizon = 10;
  double gamma = 0.99;
  std::vector<PlannerKind> planners{PlannerKind::kDistributed};
  SolverSpec centralized_solver;
  SolverSpec distributed_solver;
  int instances = 1;
  std::uint64_t seed = 1;
  bool simulate = true;
};

// Seeded random instance number `index` of the configuration.
Instance generate_instance(const ExperimentConfig& config, int index);

struct MissionRow {
  int instance = 0;
  std::uint64_t stream_seed = 0;
  PlannerKind planner = PlannerKind::kDistributed;
  bool failed = false;
  std::string error;
  // Oracle reward of the plan computed at t = 0.
  double reward_t0 = 0.0;
  int mission_time = 0;
  bool captured = false;
  int capture_time = 0;
  int fallbacks = 0;
  // Timing and gaps; not reproducible between runs.
  double solve_seconds_t0 = 0.0;
  double solve_seconds_mean = 0.0;
  double gap_t0 = 0.0;
  double gap_max = 0.0;
};

struct Aggregate {
  double mean = 0.0;
  double median = 0.0;
  double sem = 0.0;
  int count = 0;
};

Aggregate aggregate(std::vector<double> values);

struct PlannerSummary {
  PlannerKind planner = PlannerKind::kDistributed;
  Aggregate reward_t0;
  Aggregate mission_time;
  Aggregate solve_seconds_t0;
  Aggregate solve_seconds_mean;
  Aggregate gap_t0;
  int failures = 0;
};

struct ExperimentSummary {
  std::string id;
  std::string digest;
  std::uint64_t seed = 0;
  std::vector<MissionRow> rows;
  std::vector<PlannerSummary> planners;
  // (centralized - distributed) / centralized per instance, when both ran.
  bool has_reward_loss = false;
  Aggregate relative_reward_loss;
  int failures = 0;
};

ExperimentSummary run_experiment(const ExperimentConfig& config);

// Deterministic columns only.
std::string missions_csv(const ExperimentSummary& summary);
std::string summary_csv(const ExperimentSummary& summary);
// Solve times and MIP gaps.
std::string timing_csv(const ExperimentSummary& summary);
std::string summary_timing_csv(const ExperimentSummary& summary);

}  // namespace mespp

#endif  // MESPP_SIMULATOR_H_
