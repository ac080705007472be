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

#ifndef MESPP_SOLVER_H_
#define MESPP_SOLVER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mespp/instance.h"
#include "mespp/milp.h"

namespace mespp {

enum class SolveStatus { kOptimal, kFeasibleTimeout, kInfeasible, kError };
enum class Backend { kExternal, kEnumeration };

std::string_view status_name(SolveStatus status);
SolveStatus parse_status(std::string_view name);

struct SolverSpec {
  Backend backend = Backend::kExternal;
  // Shell command with {lp} {sol} {timeout} {threads} {gap} {presolve}
  // placeholders. The solver must read {lp} and write {sol} in the solution
  // dialect understood by parse_solution().
  std::string command;
  double timeout_seconds = 1800.0;
  int threads = 8;
  double gap_tolerance = 1e-9;
  bool presolve = true;
  // Largest joint-path count the enumeration backend accepts.
  double enumeration_cap = 1e7;
};

struct SolveResult {
  SolveStatus status = SolveStatus::kError;
  double objective = 0.0;
  // Incumbent aligned with MilpModel::variables(); empty for enumeration.
  std::vector<double> values;
  // Incumbent plan, set by the enumeration backend.
  std::optional<JointPlan> plan;
  double mip_gap = 0.0;
  double wall_seconds = 0.0;
  std::string solver;
  std::string diagnostics;
  // Leaves scored by the enumeration backend.
  std::uint64_t leaves = 0;

  bool has_incumbent() const { return plan.has_value() || !values.empty(); }
};

// Solution-file dialect: whitespace-separated "name value" pairs, '#'
// comments. The keys "objective", "status" and "gap" carry solve metadata.
struct SolutionFile {
  std::optional<double> objective;
  std::optional<SolveStatus> status;
  std::optional<double> gap;
  std::map<std::string, double> values;
};

SolutionFile parse_solution(std::string_view text);

// Expands the placeholders of a command template.
std::string expand_command(const std::string& templ, const std::string& lp_path,
                           const std::string& sol_path, const SolverSpec& spec);

// Writes the model as LP text into a fresh temporary directory (root taken
// from $MESPP_TMPDIR, else the system temp dir), runs the command template and
// reads the solution back. Failures are reported through the result status.
SolveResult solve_external(const MilpModel& model, const SolverSpec& spec);

// Number of delta'-walks of `horizon` steps from `start`.
double count_paths(const Graph& g, Vertex start, int horizon);

struct EnumerationOptions {
  double cap = 1e7;
  // Per searcher: a pinned path (horizon + 1 vertices) or nullopt to search.
  std::vector<std::optional<std::vector<Vertex>>> fixed;
};

// Joint-path count the enumeration would score; throws EnumerationCapError
// when it exceeds options.cap.
double enumeration_size(const Instance& instance,
                        const EnumerationOptions& options = {});

// Exhaustive search over all joint paths of instance.horizon steps. Each leaf
// carries the exact discounted reward of its plan; the best plan wins, ties
// going to the lexicographically smallest plan.
SolveResult solve_enumeration(const Instance& instance,
                              const EnumerationOptions& options = {});

// Dispatches on spec.backend.
SolveResult solve(const Instance& instance, const MilpModel& model,
                  const SolverSpec& spec);

// Reads x^{s,t}_v >= 0.5 into one path per searcher and checks legality.
JointPlan decode_paths(const MilpModel& model, const SolveResult& result);

}  // namespace mespp

#endif  // MESPP_SOLVER_H_
