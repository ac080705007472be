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

#include "mespp/solver.h"

#include <stdio.h>
#include <stdlib.h>
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "mespp/errors.h"
#include "mespp/lp_format.h"

namespace mespp {
namespace {

namespace fs = std::filesystem;

std::string replace_all(std::string s, std::string_view key,
                        std::string_view value) {
  size_t pos = 0;
  while ((pos = s.find(key, pos)) != std::string::npos) {
    s.replace(pos, key.size(), value);
    pos += value.size();
  }
  return s;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path make_temp_dir() {
  const char* env = std::getenv("MESPP_TMPDIR");
  fs::path root = env != nullptr && *env != '\0' ? fs::path(env)
                                                 : fs::temp_directory_path();
  fs::create_directories(root);
  std::string templ = (root / "mespp-XXXXXX").string();
  if (mkdtemp(templ.data()) == nullptr) {
    throw SolverError(fmt::format("cannot create temp dir under {}",
                                  root.string()));
  }
  return fs::path(templ);
}

// Runs `command` through the shell, returning its exit code and merged output.
int run_command(const std::string& command, std::string* output) {
  FILE* pipe = popen((command + " 2>&1").c_str(), "r");
  if (pipe == nullptr) return -1;
  char buffer[4096];
  size_t got = 0;
  while ((got = fread(buffer, 1, sizeof buffer, pipe)) > 0) {
    output->append(buffer, got);
  }
  int status = pclose(pipe);
  if (status == -1) return -1;
  return WIFEXITED(status) ? WEXITSTATUS(status) : 128 + WTERMSIG(status);
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

std::string_view status_name(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kFeasibleTimeout:
      return "feasible-timeout";
    case SolveStatus::kInfeasible:
      return "infeasible";
    case SolveStatus::kError:
      return "error";
  }
  return "error";
}

SolveStatus parse_status(std::string_view name) {
  if (name == "optimal") return SolveStatus::kOptimal;
  if (name == "feasible-timeout") return SolveStatus::kFeasibleTimeout;
  if (name == "infeasible") return SolveStatus::kInfeasible;
  if (name == "error") return SolveStatus::kError;
  throw ParseError(0, fmt::format("unknown solve status '{}'", name));
}

SolutionFile parse_solution(std::string_view text) {
  SolutionFile sol;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    std::string key;
    std::string value;
    if (!(fields >> key)) continue;
    if (!(fields >> value)) {
      throw ParseError(line_no, fmt::format("'{}' has no value", key));
    }
    if (key == "status") {
      sol.status = parse_status(value);
      continue;
    }
    double number = 0.0;
    try {
      size_t used = 0;
      number = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ParseError(line_no, fmt::format("bad value '{}'", value));
    }
    if (key == "objective") {
      sol.objective = number;
    } else if (key == "gap") {
      sol.gap = number;
    } else {
      sol.values[key] = number;
    }
  }
  return sol;
}

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

}  // namespace

std::string expand_command(const std::string& templ, const std::string& lp_path,
                           const std::string& sol_path,
                           const SolverSpec& spec) {
  std::string cmd = replace_all(templ, "{lp}", shell_quote(lp_path));
  cmd = replace_all(cmd, "{sol}", shell_quote(sol_path));
  cmd = replace_all(cmd, "{timeout}", format_number(spec.timeout_seconds));
  cmd = replace_all(cmd, "{threads}", std::to_string(spec.threads));
  cmd = replace_all(cmd, "{gap}", format_number(spec.gap_tolerance));
  cmd = replace_all(cmd, "{presolve}", spec.presolve ? "on" : "off");
  return cmd;
}

SolveResult solve_external(const MilpModel& model, const SolverSpec& spec) {
  SolveResult result;
  result.solver = "external";
  if (spec.timeout_seconds <= 0) {
    throw SolverError("solver timeout must be positive");
  }
  if (spec.command.empty()) {
    result.status = SolveStatus::kError;
    result.diagnostics = "no solver command configured";
    return result;
  }
  const auto start = std::chrono::steady_clock::now();
  fs::path dir = make_temp_dir();
  fs::path lp = dir / "model.lp";
  fs::path sol = dir / "model.sol";
  {
    std::ofstream out(lp);
    out << write_lp(model);
  }
  std::string cmd = expand_command(spec.command, lp.string(), sol.string(), spec);
  result.solver = cmd.substr(0, cmd.find(' '));
  std::string output;
  int code = run_command(cmd, &output);
  result.wall_seconds = seconds_since(start);
  auto finish = [&](SolveStatus status, std::string diag) {
    result.status = status;
    result.diagnostics = std::move(diag);
    std::error_code ignored;
    fs::remove_all(dir, ignored);
    return result;
  };
  if (code != 0) {
    return finish(SolveStatus::kError,
                  fmt::format("solver exited with code {}: {}", code, output));
  }
  if (!fs::exists(sol)) {
    return finish(SolveStatus::kError,
                  fmt::format("solver wrote no solution file: {}", output));
  }
  SolutionFile parsed;
  try {
    parsed = parse_solution(read_file(sol));
  } catch (const ParseError& e) {
    return finish(SolveStatus::kError,
                  fmt::format("unparseable solution: {}", e.what()));
  }
  SolveStatus status = parsed.status.value_or(
      parsed.values.empty() ? SolveStatus::kError : SolveStatus::kOptimal);
  if (status == SolveStatus::kOptimal ||
      status == SolveStatus::kFeasibleTimeout) {
    if (parsed.values.empty()) {
      return finish(SolveStatus::kError, "solution file has no incumbent");
    }
    result.values.assign(model.variables().size(), 0.0);
    for (size_t i = 0; i < model.variable_names().size(); ++i) {
      auto it = parsed.values.find(model.variable_names()[i]);
      if (it != parsed.values.end()) result.values[i] = it->second;
    }
    if (parsed.objective) {
      result.objective = *parsed.objective;
    } else {
      for (const auto& term : model.objective()) {
        result.objective += term.coef * result.values[term.var];
      }
    }
    result.mip_gap = std::max(0.0, parsed.gap.value_or(0.0));
  }
  return finish(status, output);
}

JointPlan decode_paths(const MilpModel& model, const SolveResult& result) {
  if (result.plan) return *result.plan;
  if (result.values.size() != model.variables().size()) {
    throw DecodeError("result carries no incumbent for this model");
  }
  int searchers = 0;
  int horizon = 0;
  for (const auto& v : model.variables()) {
    if (v.family != VarFamily::kX) continue;
    searchers = std::max(searchers, v.searcher);
    horizon = std::max(horizon, v.time);
  }
  JointPlan plan;
  plan.paths.assign(static_cast<size_t>(searchers),
                    std::vector<Vertex>(static_cast<size_t>(horizon) + 1, 0));
  const auto& vars = model.variables();
  for (size_t i = 0; i < vars.size(); ++i) {
    const auto& v = vars[i];
    if (v.family != VarFamily::kX || result.values[i] < 0.5) continue;
    Vertex& slot = plan.paths[v.searcher - 1][v.time];
    if (slot != 0) {
      throw DecodeError(fmt::format(
          "searcher {} occupies both {} and {} at t={}", v.searcher, slot,
          v.vertex, v.time));
    }
    slot = v.vertex;
  }
  for (int s = 1; s <= searchers; ++s) {
    for (int t = 0; t <= horizon; ++t) {
      if (plan.paths[s - 1][t] == 0) {
        throw DecodeError(
            fmt::format("searcher {} has no position at t={}", s, t));
      }
    }
  }
  if (model.instance()) {
    try {
      check_plan(*model.instance(), plan);
    } catch (const IllegalPlanError& e) {
      throw DecodeError(e.what());
    }
  }
  return plan;
}

SolveResult solve(const Instance& instance, const MilpModel& model,
                  const SolverSpec& spec) {
  if (spec.backend == Backend::kEnumeration) {
    EnumerationOptions options;
    options.cap = spec.enumeration_cap;
    return solve_enumeration(instance, options);
  }
  return solve_external(model, spec);
}

}  // namespace mespp
