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

// mespp command-line front end.
//
//   mespp plan       --config run.ini [--out dir]   plan file + stats
//   mespp export-lp  --config run.ini               model.lp
//   mespp simulate   --config run.ini --missions N  Monte-Carlo check of a plan
//   mespp benchmark  --config run.ini               experiment CSVs

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "mespp/config.h"
#include "mespp/errors.h"
#include "mespp/lp_format.h"
#include "mespp/milp.h"
#include "mespp/planner.h"
#include "mespp/simulator.h"

#ifndef MESPP_DEFAULT_SOLVER_CMD
#define MESPP_DEFAULT_SOLVER_CMD ""
#endif

namespace {

using namespace mespp;

struct Flags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> planner;
  std::optional<std::string> solver_cmd;
  std::optional<double> timeout;
  std::optional<std::string> out;
  bool presolve_off = false;
  int missions = 10000;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "run configuration (INI)")
      ->required();
  cmd->add_option("--seed", f.seed, "master seed");
  cmd->add_option("--planner", f.planner,
                  "centralized | distributed | enumeration | "
                  "distributed-enumeration");
  cmd->add_option("--solver-cmd", f.solver_cmd,
                  "solver command template with {lp} {sol} {timeout} "
                  "{threads} {gap} {presolve}");
  cmd->add_option("--timeout", f.timeout, "solver time limit in seconds");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_flag("--presolve-off", f.presolve_off, "disable solver presolve");
}

std::string default_solver_command() {
  if (const char* env = std::getenv("MESPP_SOLVER_CMD"); env && *env) {
    return env;
  }
  return MESPP_DEFAULT_SOLVER_CMD;
}

RunConfig load(const Flags& f) {
  if (!std::filesystem::exists(f.config)) {
    throw ConfigError(fmt::format("config file '{}' not found", f.config));
  }
  RunConfig c = load_config_file(f.config);
  if (f.seed) c.seed = *f.seed;
  if (f.planner) {
    parse_planner(*f.planner);
    c.planner = *f.planner;
    c.planners = {*f.planner};
  }
  if (f.solver_cmd) c.solver_command = *f.solver_cmd;
  if (f.timeout) {
    c.timeout_centralized = *f.timeout;
    c.timeout_distributed = *f.timeout;
  }
  if (f.out) c.out = *f.out;
  if (f.presolve_off) c.presolve = false;
  return c;
}

bool is_distributed(PlannerKind k) {
  return k == PlannerKind::kDistributed ||
         k == PlannerKind::kDistributedEnumeration;
}

SolverSpec spec_for(const RunConfig& c, PlannerKind k) {
  SolverSpec spec = solver_spec(c, is_distributed(k), default_solver_command());
  spec.backend = k == PlannerKind::kEnumeration ||
                         k == PlannerKind::kDistributedEnumeration
                     ? Backend::kEnumeration
                     : Backend::kExternal;
  return spec;
}

std::filesystem::path out_dir(const RunConfig& c) {
  std::filesystem::path dir(c.out);
  std::filesystem::create_directories(dir);
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  if (!f) throw Error(fmt::format("cannot write '{}'", path.string()));
}

std::string provenance(const RunConfig& c, std::string_view comment) {
  return fmt::format("{} config {} digest {} seed {}\n", comment, c.id,
                     config_digest(c), c.seed);
}

PlanningOutcome plan_once(const RunConfig& c, const Instance& inst) {
  PlannerKind kind = parse_planner(c.planner);
  SolverSpec spec = spec_for(c, kind);
  return is_distributed(kind) ? plan_distributed_step(inst, inst.starts, spec)
                              : plan_centralized(inst, spec);
}

int cmd_plan(const Flags& f) {
  RunConfig c = load(f);
  Instance inst = build_instance(c);
  PlanningOutcome outcome = plan_once(c, inst);
  auto dir = out_dir(c);

  std::string plan = provenance(c, "#");
  plan += fmt::format("# planner {}\n", c.planner);
  plan += fmt::format("objective {}\n", format_number(outcome.oracle_reward));
  for (int s = 0; s < outcome.plan.searchers(); ++s) {
    plan += fmt::format("s{}:", s + 1);
    for (Vertex v : outcome.plan.paths[s]) plan += fmt::format(" {}", v);
    plan += '\n';
  }
  write_text(dir / "plan.txt", plan);

  std::string stats = provenance(c, "#");
  stats += fmt::format("solver_objective {}\n", format_number(outcome.objective));
  stats += fmt::format("total_seconds {}\n", outcome.total_seconds());
  stats += fmt::format("max_gap {}\n", format_number(outcome.max_gap()));
  for (size_t i = 0; i < outcome.stats.size(); ++i) {
    const auto& st = outcome.stats[i];
    stats += fmt::format(
        "solve {} status {} objective {} seconds {} gap {} solver {}{}\n",
        i + 1, status_name(st.status), format_number(st.objective),
        st.seconds, format_number(st.gap), st.solver,
        i < outcome.stay_put.size() && outcome.stay_put[i] ? " stay-put" : "");
  }
  write_text(dir / "stats.txt", stats);
  std::cout << plan;
  return 0;
}

int cmd_export_lp(const Flags& f) {
  RunConfig c = load(f);
  MilpModel model = build_model(build_instance(c));
  auto path = out_dir(c) / "model.lp";
  write_text(path, provenance(c, "\\") + write_lp(model));
  std::cout << path.string() << '\n';
  return 0;
}

int cmd_simulate(const Flags& f) {
  RunConfig c = load(f);
  Instance inst = build_instance(c);
  PlanningOutcome outcome = plan_once(c, inst);
  PlanEvaluation eval = evaluate_joint_plan(inst, outcome.plan);
  double predicted = eval.beliefs.back().capture();
  Rng rng = make_rng(c.seed, 0);
  int captured = 0;
  for (int i = 0; i < f.missions; ++i) {
    if (simulate_fixed_plan(inst, outcome.plan, rng).captured) ++captured;
  }
  double freq = f.missions > 0 ? static_cast<double>(captured) / f.missions : 0;
  std::string csv = provenance(c, "#");
  csv += "rng,missions,captured,frequency,predicted_capture\n";
  csv += fmt::format("{},{},{},{},{}\n", kRngName, f.missions, captured,
                     format_number(freq), format_number(predicted));
  write_text(out_dir(c) / "simulate.csv", csv);
  std::cout << csv;
  return 0;
}

int cmd_benchmark(const Flags& f) {
  RunConfig c = load(f);
  ExperimentConfig e = build_experiment(c);
  e.centralized_solver = solver_spec(c, false, default_solver_command());
  e.distributed_solver = solver_spec(c, true, default_solver_command());
  ExperimentSummary summary = run_experiment(e);
  auto dir = out_dir(c);
  write_text(dir / "missions.csv", missions_csv(summary));
  write_text(dir / "summary.csv", summary_csv(summary));
  write_text(dir / "timing.csv", timing_csv(summary));
  write_text(dir / "summary_timing.csv", summary_timing_csv(summary));
  std::cout << summary_csv(summary);
  if (summary.failures > 0) {
    std::cerr << summary.failures << " planner run(s) failed; see "
              << (dir / "missions.csv").string() << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multi-robot efficient search path planning"};
  app.require_subcommand(1);
  Flags flags;
  auto* plan = app.add_subcommand("plan", "plan from the start positions");
  auto* lp = app.add_subcommand("export-lp", "write the joint MILP model");
  auto* sim = app.add_subcommand("simulate", "simulate a fixed plan");
  auto* bench = app.add_subcommand("benchmark", "run a seeded experiment");
  for (auto* cmd : {plan, lp, sim, bench}) add_common(cmd, flags);
  sim->add_option("--missions", flags.missions, "number of simulated missions")
      ->check(CLI::NonNegativeNumber);
  CLI11_PARSE(app, argc, argv);

  try {
    if (plan->parsed()) return cmd_plan(flags);
    if (lp->parsed()) return cmd_export_lp(flags);
    if (sim->parsed()) return cmd_simulate(flags);
    return cmd_benchmark(flags);
  } catch (const std::exception& e) {
    std::cerr << "mespp: " << e.what() << '\n';
    return 1;
  }
}
