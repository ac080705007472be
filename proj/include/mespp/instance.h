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

#ifndef MESPP_INSTANCE_H_
#define MESPP_INSTANCE_H_

#include <compare>
#include <memory>
#include <string>
#include <vector>

#include "mespp/belief.h"
#include "mespp/graph.h"

namespace mespp {

// One vertex sequence per searcher, all of equal length (horizon + 1).
struct JointPlan {
  std::vector<std::vector<Vertex>> paths;

  int searchers() const { return static_cast<int>(paths.size()); }
  int horizon() const {
    return paths.empty() ? 0 : static_cast<int>(paths.front().size()) - 1;
  }
  // Joint positions at time t.
  std::vector<Vertex> at(int t) const;

  // Lexicographic, searcher-major.
  auto operator<=>(const JointPlan&) const = default;
  bool operator==(const JointPlan&) const = default;
};

JointPlan stay_put_plan(const std::vector<Vertex>& positions, int horizon);

struct Instance {
  std::shared_ptr<const Environment> env;
  std::vector<Vertex> starts;
  CaptureConfig capture;
  MotionMatrix motion;
  BeliefVector initial_belief;
  int deadline = 1;
  int horizon = 1;
  double gamma = 0.99;

  const Graph& graph() const { return env->graph; }
  int n() const { return env->graph.n(); }
  int searchers() const { return static_cast<int>(starts.size()); }

  // Throws InvariantError / InvalidVertexError on any violated invariant.
  void validate() const;
  // Same problem re-rooted at the given positions, belief and horizon.
  Instance replanned(const std::vector<Vertex>& positions,
                     const BeliefVector& belief, int new_horizon) const;
  // Stable text rendering of every field; the digest hashes it.
  std::string canonical() const;
  std::string digest() const;
};

struct PlanEvaluation {
  double reward = 0.0;
  std::vector<BeliefVector> beliefs;

  std::vector<double> capture_trajectory() const;
};

// Throws IllegalPlanError naming the first offending (searcher, time).
void check_plan(const Instance& instance, const JointPlan& plan);

// Iterates the belief recursion along `plan` from the initial belief and
// scores it with the discounted capture objective. Plans may be of any
// horizon; this is the ground truth every solver is checked against.
PlanEvaluation evaluate_joint_plan(const Instance& instance,
                                   const JointPlan& plan);

// FNV-1a, 64-bit, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

}  // namespace mespp

#endif  // MESPP_INSTANCE_H_
