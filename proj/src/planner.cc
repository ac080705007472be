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

#include "mespp/planner.h"

#include <algorithm>

#include <fmt/format.h>

#include "mespp/errors.h"
#include "mespp/milp.h"

namespace mespp {
namespace {

constexpr double kCertainCapture = 1.0 - 1e-9;

SolveStats stats_of(const SolveResult& r) {
  return {r.status, r.objective, r.wall_seconds, r.mip_gap, r.solver};
}

bool usable(const SolveResult& r) {
  return (r.status == SolveStatus::kOptimal ||
          r.status == SolveStatus::kFeasibleTimeout) &&
         r.has_incumbent();
}

}  // namespace

double PlanningOutcome::total_seconds() const {
  double total = 0.0;
  for (const auto& s : stats) total += s.seconds;
  return total;
}

double PlanningOutcome::max_gap() const {
  double gap = 0.0;
  for (const auto& s : stats) gap = std::max(gap, s.gap);
  return gap;
}

PlanningOutcome plan_centralized(const Instance& instance,
                                 const SolverSpec& spec) {
  instance.validate();
  SolveResult result;
  MilpModel model;
  if (spec.backend == Backend::kEnumeration) {
    result = solve_enumeration(instance,
                               {.cap = spec.enumeration_cap, .fixed = {}});
  } else {
    model = build_model(instance);
    result = solve_external(model, spec);
  }
  if (!usable(result)) {
    throw SolverError(fmt::format("centralized solve {}: {}",
                                  status_name(result.status),
                                  result.diagnostics));
  }
  PlanningOutcome out;
  out.plan = decode_paths(model, result);
  out.objective = result.objective;
  out.oracle_reward = evaluate_joint_plan(instance, out.plan).reward;
  out.stats.push_back(stats_of(result));
  out.stay_put.assign(static_cast<size_t>(instance.searchers()), false);
  return out;
}

PlanningOutcome plan_distributed_step(const Instance& instance,
                                      const std::vector<Vertex>& positions,
                                      const SolverSpec& spec) {
  Instance local = instance.replanned(positions, instance.initial_belief,
                                      instance.horizon);
  local.validate();
  const int m = local.searchers();
  const int h = local.horizon;
  JointPlan joint = stay_put_plan(positions, h);
  PlanningOutcome out;
  out.stay_put.assign(static_cast<size_t>(m), false);

  MilpModel base;
  if (spec.backend == Backend::kExternal) base = build_model(local);

  for (int i = 1; i <= m; ++i) {
    SolveResult result;
    MilpModel model;
    try {
      if (spec.backend == Backend::kEnumeration) {
        EnumerationOptions options{.cap = spec.enumeration_cap, .fixed = {}};
        for (int j = 1; j <= m; ++j) {
          if (j == i) {
            options.fixed.emplace_back(std::nullopt);
          } else {
            options.fixed.emplace_back(joint.paths[j - 1]);
          }
        }
        result = solve_enumeration(local, options);
      } else {
        model = base;
        for (int j = 1; j <= m; ++j) {
          if (j != i) model = fix_searcher_path(model, j, joint.paths[j - 1]);
        }
        result = solve_external(model, spec);
      }
    } catch (const Error& e) {
      result.status = SolveStatus::kError;
      result.diagnostics = e.what();
    }
    out.stats.push_back(stats_of(result));
    if (!usable(result)) {
      out.stay_put[i - 1] = true;
      continue;
    }
    try {
      joint.paths[i - 1] = decode_paths(model, result).paths[i - 1];
      out.objective = result.objective;
    } catch (const DecodeError&) {
      out.stay_put[i - 1] = true;
    }
  }
  out.plan = joint;
  out.oracle_reward = evaluate_joint_plan(local, joint).reward;
  // With every solve failed the plan is stay-put; report its value.
  if (std::all_of(out.stay_put.begin(), out.stay_put.end(),
                  [](bool b) { return b; })) {
    out.objective = out.oracle_reward;
  }
  return out;
}

MissionRecord run_receding_horizon(const Instance& instance,
                                   const SolverSpec& spec,
                                   const RecedingOptions& options) {
  instance.validate();
  MissionRecord record;
  const int tau = instance.deadline;
  std::vector<Vertex> positions = instance.starts;
  BeliefVector belief = instance.initial_belief;
  record.executed = stay_put_plan(positions, 0);
  record.beliefs.push_back(belief);
  record.capture_time = tau + 1;

  for (int t = 0; t < tau; ++t) {
    const int horizon = std::min(instance.horizon, tau - t);
    Instance local = instance.replanned(positions, belief, horizon);
    PlanningOutcome outcome;
    if (options.regime == Regime::kDistributed) {
      outcome = plan_distributed_step(local, positions, spec);
    } else {
      try {
        outcome = plan_centralized(local, spec);
      } catch (const Error& e) {
        outcome.plan = stay_put_plan(positions, horizon);
        outcome.stats.push_back({SolveStatus::kError, 0.0, 0.0, 0.0, e.what()});
        outcome.stay_put.assign(positions.size(), true);
      }
    }
    record.solve_seconds.push_back(outcome.total_seconds());
    record.gaps.push_back(outcome.max_gap());
    record.fallbacks.push_back(static_cast<int>(
        std::count(outcome.stay_put.begin(), outcome.stay_put.end(), true)));

    positions = outcome.plan.at(1);
    belief = update_belief(belief, instance.motion, positions, *instance.env,
                           instance.capture);
    for (size_t s = 0; s < positions.size(); ++s) {
      record.executed.paths[s].push_back(positions[s]);
    }
    record.beliefs.push_back(belief);
    record.mission_time = t + 1;

    if (options.detect) {
      if (options.detect(t + 1, positions)) {
        record.captured = true;
        record.capture_time = t + 1;
        break;
      }
    } else if (belief.capture() > kCertainCapture) {
      record.captured = true;
      record.capture_time = t + 1;
      break;
    }
  }

  std::vector<double> bc;
  for (const auto& b : record.beliefs) bc.push_back(b.capture());
  bc.resize(static_cast<size_t>(tau) + 1, bc.back());
  record.reward = discounted_reward(bc, instance.gamma);
  return record;
}

}  // namespace mespp
