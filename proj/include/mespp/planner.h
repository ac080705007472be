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

#ifndef MESPP_PLANNER_H_
#define MESPP_PLANNER_H_

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "mespp/instance.h"
#include "mespp/solver.h"

namespace mespp {

struct SolveStats {
  SolveStatus status = SolveStatus::kError;
  double objective = 0.0;
  double seconds = 0.0;
  double gap = 0.0;
  std::string solver;
};

struct PlanningOutcome {
  JointPlan plan;
  // Objective reported by the last solve (the full joint plan in both modes).
  double objective = 0.0;
  // evaluate_joint_plan() of `plan`.
  double oracle_reward = 0.0;
  // One record per searcher in distributed mode, a single one otherwise.
  std::vector<SolveStats> stats;
  // Searchers that fell back to staying put after a failed solve.
  std::vector<bool> stay_put;

  double total_seconds() const;
  double max_gap() const;
};

// One solve over instance.horizon for the whole team (MILP of the kind
// matching the capture configuration, or enumeration when spec.backend says
// so). Solver failures throw SolverError carrying the diagnostics.
PlanningOutcome plan_centralized(const Instance& instance,
                                 const SolverSpec& spec);

// Implicit coordination: searchers plan in index order, each with earlier
// teammates pinned to their fresh paths and later ones pinned to staying at
// their current vertex. A failed solve leaves that searcher in place.
// The belief to plan from is instance.initial_belief.
PlanningOutcome plan_distributed_step(const Instance& instance,
                                      const std::vector<Vertex>& positions,
                                      const SolverSpec& spec);

enum class Regime { kCentralized, kDistributed };

struct RecedingOptions {
  Regime regime = Regime::kDistributed;
  // Simulation hook: called with (t, positions) after each executed step;
  // returns true when the target was detected. Without a hook the mission
  // stops once the capture mass exceeds 1 - 1e-9.
  std::function<bool(int, const std::vector<Vertex>&)> detect;
};

struct MissionRecord {
  // Executed positions, t = 0..mission_time.
  JointPlan executed;
  // Planner belief b(0..mission_time).
  std::vector<BeliefVector> beliefs;
  bool captured = false;
  // Time of detection, or deadline + 1 when the target was not detected.
  int capture_time = 0;
  // Time step the mission ended (capture, certain capture, or deadline).
  int mission_time = 0;
  // Discounted capture mass over 0..deadline, holding the last value after
  // the mission ends.
  double reward = 0.0;
  std::vector<double> solve_seconds;
  std::vector<double> gaps;
  std::vector<int> fallbacks;
  std::uint64_t seed = 0;
};

// Plans min(h, deadline - t) steps ahead at every t, executes the first move
// and updates the belief, until the deadline or a stop condition.
MissionRecord run_receding_horizon(const Instance& instance,
                                   const SolverSpec& spec,
                                   const RecedingOptions& options = {});

}  // namespace mespp

#endif  // MESPP_PLANNER_H_
