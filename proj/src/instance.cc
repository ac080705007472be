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

#include "mespp/instance.h"

#include <cmath>
#include <cstdint>

#include <fmt/format.h>

#include "mespp/errors.h"

namespace mespp {

std::vector<Vertex> JointPlan::at(int t) const {
  std::vector<Vertex> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(p[t]);
  return out;
}

JointPlan stay_put_plan(const std::vector<Vertex>& positions, int horizon) {
  JointPlan plan;
  for (Vertex v : positions) {
    plan.paths.emplace_back(static_cast<size_t>(horizon) + 1, v);
  }
  return plan;
}

void Instance::validate() const {
  if (!env) throw InvariantError("instance has no environment");
  if (starts.empty()) throw InvariantError("instance needs at least one searcher");
  for (Vertex s : starts) graph().check_vertex(s);
  capture.validate(searchers());
  if (motion.n() != n()) {
    throw InvariantError(fmt::format("motion matrix is {}x{} for {} vertices",
                                     motion.n(), motion.n(), n()));
  }
  if (initial_belief.n() != n()) {
    throw InvariantError(fmt::format("belief has {} vertex entries, graph {}",
                                     initial_belief.n(), n()));
  }
  if (deadline < 0) throw InvariantError("deadline must be >= 0");
  if (horizon < 1) throw InvariantError("planning horizon must be >= 1");
  if (!(gamma > 0.0 && gamma <= 1.0)) {
    throw InvariantError(fmt::format("discount {} outside (0,1]", gamma));
  }
}

Instance Instance::replanned(const std::vector<Vertex>& positions,
                             const BeliefVector& belief,
                             int new_horizon) const {
  Instance out = *this;
  out.starts = positions;
  out.initial_belief = belief;
  out.horizon = new_horizon;
  return out;
}

std::string Instance::canonical() const {
  std::string out = fmt::format("graph {}\n", write_graph(graph()));
  out += fmt::format("starts {}\n", fmt::join(starts, " "));
  out += fmt::format("capture {} {} zeta {}\n", capture_mode_name(capture.mode),
                     capture.radius, fmt::join(capture.zeta, " "));
  out += fmt::format("motion {}\n{}", motion.kernel(), write_motion(motion));
  out += fmt::format("belief {}\n", fmt::join(initial_belief.values(), " "));
  out += fmt::format("deadline {} horizon {} gamma {}\n", deadline, horizon,
                     gamma);
  return out;
}

std::string Instance::digest() const { return fnv1a_hex(canonical()); }

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  return fmt::format("{:016x}", hash);
}

std::vector<double> PlanEvaluation::capture_trajectory() const {
  std::vector<double> out;
  out.reserve(beliefs.size());
  for (const auto& b : beliefs) out.push_back(b.capture());
  return out;
}

void check_plan(const Instance& instance, const JointPlan& plan) {
  if (plan.searchers() != instance.searchers()) {
    throw IllegalPlanError(
        0, 0,
        fmt::format("plan has {} paths for {} searchers", plan.searchers(),
                    instance.searchers()));
  }
  const auto length = plan.paths.front().size();
  for (int s = 1; s <= plan.searchers(); ++s) {
    const auto& path = plan.paths[s - 1];
    if (path.size() != length || path.empty()) {
      throw IllegalPlanError(s, 0, "paths must be non-empty and equal length");
    }
    if (path[0] != instance.starts[s - 1]) {
      throw IllegalPlanError(
          s, 0,
          fmt::format("starts at {} instead of {}", path[0],
                      instance.starts[s - 1]));
    }
    for (size_t t = 0; t < path.size(); ++t) {
      if (!instance.graph().valid(path[t])) {
        throw IllegalPlanError(s, static_cast<int>(t),
                               fmt::format("invalid vertex {}", path[t]));
      }
      if (t > 0 && path[t] != path[t - 1] &&
          !instance.graph().adjacent(path[t - 1], path[t])) {
        throw IllegalPlanError(
            s, static_cast<int>(t),
            fmt::format("{} -> {} is not a move in delta'", path[t - 1],
                        path[t]));
      }
    }
  }
}

PlanEvaluation evaluate_joint_plan(const Instance& instance,
                                   const JointPlan& plan) {
  check_plan(instance, plan);
  PlanEvaluation eval;
  eval.beliefs.push_back(instance.initial_belief);
  for (int t = 1; t <= plan.horizon(); ++t) {
    eval.beliefs.push_back(update_belief(eval.beliefs.back(), instance.motion,
                                         plan.at(t), *instance.env,
                                         instance.capture));
  }
  eval.reward = discounted_reward(eval.capture_trajectory(), instance.gamma);
  return eval;
}

}  // namespace mespp
