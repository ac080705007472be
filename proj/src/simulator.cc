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

#include "mespp/simulator.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "mespp/errors.h"
#include "mespp/lp_format.h"

namespace mespp {
namespace {

// Pre-sampled randomness of one mission: the target trajectory and one
// detection draw per (time, searcher). Every planner of an instance is
// evaluated against the same realization.
struct TargetScenario {
  std::vector<Vertex> trajectory;
  std::vector<std::vector<double>> draws;
};

TargetScenario sample_scenario(const Instance& instance, Rng& rng) {
  TargetScenario sc;
  sc.trajectory.push_back(sample_target_start(instance.initial_belief, rng));
  sc.draws.emplace_back();
  for (int t = 1; t <= instance.deadline; ++t) {
    sc.trajectory.push_back(
        sample_motion(instance.motion, sc.trajectory.back(), rng));
    std::vector<double> d;
    for (int s = 0; s < instance.searchers(); ++s) d.push_back(uniform01(rng));
    sc.draws.push_back(std::move(d));
  }
  return sc;
}

// First detection time of `path` against the scenario, or deadline + 1.
int first_detection(const Instance& instance, const TargetScenario& sc,
                    const JointPlan& path) {
  for (int t = 1; t <= instance.deadline; ++t) {
    int step = std::min(t, path.horizon());
    Vertex target = sc.trajectory[t];
    for (int s = 1; s <= instance.searchers(); ++s) {
      Vertex at = path.paths[s - 1][step];
      if (instance.capture.covers(*instance.env, at, target) &&
          sc.draws[t][s - 1] < 1.0 - instance.capture.zeta_of(s)) {
        return t;
      }
    }
  }
  return instance.deadline + 1;
}

std::vector<Vertex> pick_distinct(Rng& rng, std::vector<Vertex> pool, int k) {
  k = std::min<int>(k, static_cast<int>(pool.size()));
  for (int i = 0; i < k; ++i) {
    int j = uniform_int(rng, i, static_cast<int>(pool.size()) - 1);
    std::swap(pool[i], pool[j]);
  }
  pool.resize(static_cast<size_t>(k));
  std::sort(pool.begin(), pool.end());
  return pool;
}

std::string csv_safe(std::string s) {
  for (char& c : s) {
    if (c == ',' || c == '\n' || c == '\r' || c == '"') c = ' ';
  }
  return s;
}

std::string num(double v) { return format_number(v); }

}  // namespace

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream),
                    static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int uniform_int(Rng& rng, int lo, int hi) {
  if (hi < lo) throw Error(fmt::format("empty range [{}, {}]", lo, hi));
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % span;
  std::uint64_t x = 0;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<int>(x % span);
}

Vertex sample_target_start(const BeliefVector& b0, Rng& rng) {
  if (b0.capture() > 0.0) {
    throw Error(fmt::format(
        "cannot sample a target start: initial capture mass is {}",
        b0.capture()));
  }
  double u = uniform01(rng) * (b0.sum() - b0.capture());
  Vertex last = 1;
  for (Vertex v = 1; v <= b0.n(); ++v) {
    if (b0[v] <= 0.0) continue;
    last = v;
    u -= b0[v];
    if (u < 0.0) return v;
  }
  return last;
}

Vertex sample_motion(const MotionMatrix& motion, Vertex u, Rng& rng) {
  auto row = motion.row(u);
  double x = uniform01(rng);
  Vertex last = u;
  for (size_t v = 0; v < row.size(); ++v) {
    if (row[v] <= 0.0) continue;
    last = static_cast<Vertex>(v) + 1;
    x -= row[v];
    if (x < 0.0) return last;
  }
  return last;
}

bool sense(const Instance& instance, const std::vector<Vertex>& positions,
           Vertex target, Rng& rng) {
  bool detected = false;
  for (size_t s = 0; s < positions.size(); ++s) {
    if (!instance.capture.covers(*instance.env, positions[s], target)) continue;
    double draw = uniform01(rng);
    if (draw < 1.0 - instance.capture.zeta[s]) detected = true;
  }
  return detected;
}

MissionState step_mission(const Instance& instance, const MissionState& state,
                          const std::vector<Vertex>& actions, Rng& rng) {
  if (actions.size() != state.searchers.size()) {
    throw IllegalPlanError(0, state.time + 1, "one action per searcher needed");
  }
  for (size_t s = 0; s < actions.size(); ++s) {
    Vertex from = state.searchers[s];
    Vertex to = actions[s];
    if (!instance.graph().valid(to) ||
        (to != from && !instance.graph().adjacent(from, to))) {
      throw IllegalPlanError(static_cast<int>(s) + 1, state.time + 1,
                             fmt::format("{} -> {} is not a move", from, to));
    }
  }
  MissionState next{state.time + 1, sample_motion(instance.motion, state.target, rng),
                    actions,
                    update_belief(state.belief, instance.motion, actions,
                                  *instance.env, instance.capture),
                    state.captured};
  if (sense(instance, actions, next.target, rng)) next.captured = true;
  return next;
}

SimulatedCapture simulate_fixed_plan(const Instance& instance,
                                     const JointPlan& plan, Rng& rng) {
  check_plan(instance, plan);
  Vertex target = sample_target_start(instance.initial_belief, rng);
  for (int t = 1; t <= plan.horizon(); ++t) {
    target = sample_motion(instance.motion, target, rng);
    if (sense(instance, plan.at(t), target, rng)) return {true, t};
  }
  return {false, plan.horizon() + 1};
}

MissionRecord run_simulated_mission(const Instance& instance,
                                    const SolverSpec& spec, Regime regime,
                                    Rng& rng) {
  Vertex target = sample_target_start(instance.initial_belief, rng);
  RecedingOptions options;
  options.regime = regime;
  options.detect = [&](int, const std::vector<Vertex>& positions) {
    target = sample_motion(instance.motion, target, rng);
    return sense(instance, positions, target, rng);
  };
  return run_receding_horizon(instance, spec, options);
}

std::string_view planner_name(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::kCentralized:
      return "centralized";
    case PlannerKind::kDistributed:
      return "distributed";
    case PlannerKind::kEnumeration:
      return "enumeration";
    case PlannerKind::kDistributedEnumeration:
      return "distributed-enumeration";
  }
  return "unknown";
}

PlannerKind parse_planner(std::string_view name) {
  for (auto k : {PlannerKind::kCentralized, PlannerKind::kDistributed,
                 PlannerKind::kEnumeration,
                 PlannerKind::kDistributedEnumeration}) {
    if (planner_name(k) == name) return k;
  }
  throw ConfigError(fmt::format("unknown planner '{}'", name));
}

std::string_view scenario_name(Scenario s) {
  return s == Scenario::kUniform ? "uniform" : "corner-regions";
}

Scenario parse_scenario(std::string_view name) {
  if (name == "uniform") return Scenario::kUniform;
  if (name == "corner-regions") return Scenario::kCornerRegions;
  throw ConfigError(fmt::format("unknown scenario '{}'", name));
}

Instance generate_instance(const ExperimentConfig& config, int index) {
  if (!config.env) throw ConfigError("experiment has no environment");
  const Graph& g = config.env->graph;
  const int n = g.n();
  Rng rng = make_rng(config.seed, 2 * static_cast<std::uint64_t>(index));

  std::vector<Vertex> support;
  std::vector<Vertex> start_pool;
  if (config.scenario == Scenario::kCornerRegions) {
    const int rows = config.grid_rows;
    const int cols = config.grid_cols;
    if (rows < 7 || cols < 7 || rows * cols != n) {
      throw ConfigError(
          "corner-region scenario needs a grid of at least 7x7 matching the "
          "environment");
    }
    auto id = [cols](int r, int c) { return r * cols + c + 1; };
    for (auto [r0, c0] : {std::pair{0, 0}, std::pair{0, cols - 3},
                          std::pair{rows - 3, 0},
                          std::pair{rows - 3, cols - 3}}) {
      support.push_back(
          id(r0 + uniform_int(rng, 0, 2), c0 + uniform_int(rng, 0, 2)));
    }
    std::sort(support.begin(), support.end());
    for (int r = 3; r < rows - 3; ++r) {
      for (int c = 3; c < cols - 3; ++c) start_pool.push_back(id(r, c));
    }
  } else {
    std::vector<Vertex> all(static_cast<size_t>(n));
    std::iota(all.begin(), all.end(), 1);
    int k = uniform_int(rng, config.belief_min, config.belief_max);
    support = pick_distinct(rng, all, k);
    start_pool = all;
  }

  std::vector<Vertex> starts;
  for (int s = 0; s < config.searchers; ++s) {
    Vertex v = start_pool[uniform_int(rng, 0,
                                      static_cast<int>(start_pool.size()) - 1)];
    if (config.scenario == Scenario::kCornerRegions) {
      while (std::binary_search(support.begin(), support.end(), v)) {
        v = start_pool[uniform_int(rng, 0,
                                   static_cast<int>(start_pool.size()) - 1)];
      }
    }
    starts.push_back(v);
  }

  CaptureConfig capture{config.capture_mode, config.capture_radius,
                        std::vector<double>(starts.size(), config.zeta)};
  MotionMatrix motion = config.motion == MotionKind::kStatic
                            ? motion_static(n)
                            : motion_random_walk(g, config.stay_prob);
  Instance inst{config.env,
                starts,
                capture,
                motion,
                BeliefVector::uniform(n, support),
                config.deadline,
                std::max(1, std::min(config.horizon, config.deadline)),
                config.gamma};
  inst.validate();
  return inst;
}

Aggregate aggregate(std::vector<double> values) {
  Aggregate a;
  a.count = static_cast<int>(values.size());
  if (values.empty()) return a;
  double sum = 0.0;
  for (double v : values) sum += v;
  a.mean = sum / a.count;
  std::sort(values.begin(), values.end());
  a.median = a.count % 2 == 1
                 ? values[a.count / 2]
                 : 0.5 * (values[a.count / 2 - 1] + values[a.count / 2]);
  if (a.count > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - a.mean) * (v - a.mean);
    a.sem = std::sqrt(ss / (a.count - 1)) / std::sqrt(a.count);
  }
  return a;
}

namespace {

MissionRow run_planner(const ExperimentConfig& config, const Instance& inst,
                       const TargetScenario& scenario, PlannerKind kind) {
  MissionRow row;
  row.planner = kind;
  const bool distributed = kind == PlannerKind::kDistributed ||
                           kind == PlannerKind::kDistributedEnumeration;
  SolverSpec spec =
      distributed ? config.distributed_solver : config.centralized_solver;
  spec.backend = kind == PlannerKind::kEnumeration ||
                         kind == PlannerKind::kDistributedEnumeration
                     ? Backend::kEnumeration
                     : Backend::kExternal;
  try {
    PlanningOutcome first = distributed
                                ? plan_distributed_step(inst, inst.starts, spec)
                                : plan_centralized(inst, spec);
    row.reward_t0 = first.oracle_reward;
    row.solve_seconds_t0 = first.total_seconds();
    row.gap_t0 = first.max_gap();

    JointPlan executed;
    std::vector<double> step_seconds;
    if (!distributed && inst.horizon >= inst.deadline) {
      executed = first.plan;
      step_seconds.push_back(first.total_seconds());
      row.gap_max = first.max_gap();
      row.fallbacks = static_cast<int>(
          std::count(first.stay_put.begin(), first.stay_put.end(), true));
      row.mission_time = inst.deadline;
    } else {
      RecedingOptions options;
      options.regime = distributed ? Regime::kDistributed : Regime::kCentralized;
      MissionRecord mission = run_receding_horizon(inst, spec, options);
      executed = mission.executed;
      step_seconds = mission.solve_seconds;
      for (double g : mission.gaps) row.gap_max = std::max(row.gap_max, g);
      row.fallbacks = std::accumulate(mission.fallbacks.begin(),
                                      mission.fallbacks.end(), 0);
      row.mission_time = mission.mission_time;
      row.captured = mission.captured;
      row.capture_time = mission.capture_time;
    }
    row.solve_seconds_mean = aggregate(step_seconds).mean;
    if (config.simulate) {
      int t = first_detection(inst, scenario, executed);
      row.captured = t <= inst.deadline;
      row.capture_time = t;
      row.mission_time = std::min(t, inst.deadline);
    } else if (!row.captured) {
      row.capture_time = inst.deadline + 1;
    }
  } catch (const Error& e) {
    row.failed = true;
    row.error = e.what();
  }
  return row;
}

}  // namespace

ExperimentSummary run_experiment(const ExperimentConfig& config) {
  ExperimentSummary summary;
  summary.id = config.id;
  summary.digest = config.digest;
  summary.seed = config.seed;
  std::vector<double> losses;
  for (int i = 0; i < config.instances; ++i) {
    Instance inst = generate_instance(config, i);
    Rng target_rng =
        make_rng(config.seed, 2 * static_cast<std::uint64_t>(i) + 1);
    TargetScenario scenario = sample_scenario(inst, target_rng);
    const MissionRow* central = nullptr;
    const MissionRow* distributed = nullptr;
    size_t first = summary.rows.size();
    for (PlannerKind kind : config.planners) {
      MissionRow row = run_planner(config, inst, scenario, kind);
      row.instance = i;
      row.stream_seed = 2 * static_cast<std::uint64_t>(i);
      summary.rows.push_back(std::move(row));
    }
    auto pick = [&](PlannerKind a, PlannerKind b) -> const MissionRow* {
      const MissionRow* found = nullptr;
      for (size_t r = first; r < summary.rows.size(); ++r) {
        if (summary.rows[r].planner == a) return &summary.rows[r];
        if (summary.rows[r].planner == b && found == nullptr) {
          found = &summary.rows[r];
        }
      }
      return found;
    };
    central = pick(PlannerKind::kCentralized, PlannerKind::kEnumeration);
    distributed = pick(PlannerKind::kDistributed,
                       PlannerKind::kDistributedEnumeration);
    if (central != nullptr && distributed != nullptr && !central->failed &&
        !distributed->failed) {
      double rc = central->reward_t0;
      losses.push_back(rc > 1e-12 ? (rc - distributed->reward_t0) / rc : 0.0);
    }
  }
  for (PlannerKind kind : config.planners) {
    PlannerSummary ps;
    ps.planner = kind;
    std::vector<double> reward, mission, t0, tmean, gap;
    for (const auto& row : summary.rows) {
      if (row.planner != kind) continue;
      if (row.failed) {
        ++ps.failures;
        continue;
      }
      reward.push_back(row.reward_t0);
      mission.push_back(row.mission_time);
      t0.push_back(row.solve_seconds_t0);
      tmean.push_back(row.solve_seconds_mean);
      gap.push_back(row.gap_t0);
    }
    ps.reward_t0 = aggregate(reward);
    ps.mission_time = aggregate(mission);
    ps.solve_seconds_t0 = aggregate(t0);
    ps.solve_seconds_mean = aggregate(tmean);
    ps.gap_t0 = aggregate(gap);
    summary.failures += ps.failures;
    summary.planners.push_back(ps);
  }
  if (!losses.empty()) {
    summary.has_reward_loss = true;
    summary.relative_reward_loss = aggregate(losses);
  }
  return summary;
}

std::string missions_csv(const ExperimentSummary& s) {
  std::string out =
      "config_id,config_digest,seed,rng,instance,stream,planner,status,"
      "reward_t0,mission_time,captured,capture_time,fallbacks,error\n";
  for (const auto& r : s.rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                       csv_safe(s.id), s.digest, s.seed, kRngName, r.instance,
                       r.stream_seed, planner_name(r.planner),
                       r.failed ? "failed" : "ok", num(r.reward_t0),
                       r.mission_time, r.captured ? 1 : 0, r.capture_time,
                       r.fallbacks, csv_safe(r.error));
  }
  return out;
}

std::string summary_csv(const ExperimentSummary& s) {
  std::string out =
      "config_id,config_digest,seed,rng,planner,instances,failures,"
      "reward_t0_mean,reward_t0_median,reward_t0_sem,mission_time_mean,"
      "mission_time_median,mission_time_sem,relative_reward_loss_mean,"
      "relative_reward_loss_sem\n";
  for (const auto& p : s.planners) {
    std::string loss_mean;
    std::string loss_sem;
    if (s.has_reward_loss) {
      loss_mean = num(s.relative_reward_loss.mean);
      loss_sem = num(s.relative_reward_loss.sem);
    }
    out += fmt::format(
        "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_safe(s.id),
        s.digest, s.seed, kRngName, planner_name(p.planner),
        p.reward_t0.count + p.failures, p.failures, num(p.reward_t0.mean),
        num(p.reward_t0.median), num(p.reward_t0.sem), num(p.mission_time.mean),
        num(p.mission_time.median), num(p.mission_time.sem), loss_mean,
        loss_sem);
  }
  return out;
}

std::string timing_csv(const ExperimentSummary& s) {
  std::string out =
      "config_id,config_digest,seed,instance,planner,solve_seconds_t0,"
      "solve_seconds_mean,gap_t0,gap_max\n";
  for (const auto& r : s.rows) {
    out += fmt::format("{},{},{},{},{},{},{},{},{}\n", csv_safe(s.id), s.digest,
                       s.seed, r.instance, planner_name(r.planner),
                       num(r.solve_seconds_t0), num(r.solve_seconds_mean),
                       num(r.gap_t0), num(r.gap_max));
  }
  return out;
}

std::string summary_timing_csv(const ExperimentSummary& s) {
  std::string out =
      "config_id,config_digest,seed,planner,solve_seconds_t0_mean,"
      "solve_seconds_t0_median,solve_seconds_t0_sem,solve_seconds_step_mean,"
      "solve_seconds_step_sem,gap_t0_mean,gap_t0_median,gap_t0_sem\n";
  for (const auto& p : s.planners) {
    out += fmt::format("{},{},{},{},{},{},{},{},{},{},{},{}\n", csv_safe(s.id),
                       s.digest, s.seed, planner_name(p.planner),
                       num(p.solve_seconds_t0.mean),
                       num(p.solve_seconds_t0.median),
                       num(p.solve_seconds_t0.sem),
                       num(p.solve_seconds_mean.mean),
                       num(p.solve_seconds_mean.sem), num(p.gap_t0.mean),
                       num(p.gap_t0.median), num(p.gap_t0.sem));
  }
  return out;
}

}  // namespace mespp
