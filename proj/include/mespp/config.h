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

#ifndef MESPP_CONFIG_H_
#define MESPP_CONFIG_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mespp/instance.h"
#include "mespp/simulator.h"
#include "mespp/solver.h"

namespace mespp {

// Declarative run description. On disk it is an INI file:
//
//   [run]          id, seed, planner, out
//   [environment]  kind = grid | file; rows, cols | file
//   [searchers]    starts = 1 5 9; zeta = 0.3 (one value or one per searcher)
//   [capture]      mode = same-vertex | hop-radius; radius
//   [motion]       kind = static | random-walk | file; stay; file
//   [belief]       kind = uniform | file; vertices = 2 3; file
//   [mission]      deadline, horizon, gamma
//   [solver]       command, timeout_centralized, timeout_distributed,
//                  threads, gap, presolve, enumeration_cap
//   [experiment]   instances, searchers, zeta, scenario, belief_min,
//                  belief_max, planners, simulate
//
// Relative file paths resolve against `base_dir`. The digest ignores `out`.
struct RunConfig {
  std::string id = "run";
  std::uint64_t seed = 1;
  std::string planner = "centralized";
  std::string out = "out";

  std::string env_kind = "grid";
  int rows = 1;
  int cols = 1;
  std::string graph_file;

  std::vector<Vertex> starts{1};
  std::vector<double> zeta{0.0};

  std::string capture_mode = "same-vertex";
  int capture_radius = 0;

  std::string motion_kind = "static";
  double stay_prob = 1.0;
  std::string motion_file;

  std::string belief_kind = "uniform";
  std::vector<Vertex> belief_vertices{1};
  std::string belief_file;

  int deadline = 10;
  int horizon = 10;
  double gamma = 0.99;

  std::string solver_command;
  double timeout_centralized = 1800.0;
  double timeout_distributed = 10.0;
  int threads = 8;
  double gap = 1e-9;
  bool presolve = true;
  double enumeration_cap = 1e7;

  int instances = 1;
  int exp_searchers = 1;
  double exp_zeta = 0.0;
  std::string scenario = "uniform";
  int belief_min = 5;
  int belief_max = 5;
  std::vector<std::string> planners{"distributed"};
  bool simulate = true;

  // Not serialized.
  std::string base_dir;

  bool operator==(const RunConfig& other) const;
};

RunConfig parse_config(std::string_view text, std::string base_dir = "");
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& config);
std::string config_digest(const RunConfig& config);

std::shared_ptr<const Environment> build_environment(const RunConfig& config);
Instance build_instance(const RunConfig& config);
ExperimentConfig build_experiment(const RunConfig& config);

// Solver settings for the given regime; an empty command resolves to
// `fallback_command`.
SolverSpec solver_spec(const RunConfig& config, bool distributed,
                       const std::string& fallback_command);

}  // namespace mespp

#endif  // MESPP_CONFIG_H_
