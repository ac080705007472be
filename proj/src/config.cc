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

#include "mespp/config.h"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fmt/ranges.h>

#include "mespp/errors.h"
#include "mespp/lp_format.h"

namespace mespp {
namespace {

namespace pt = boost::property_tree;

const std::map<std::string, std::set<std::string>>& known_keys() {
  static const std::map<std::string, std::set<std::string>> keys{
      {"run", {"id", "seed", "planner", "out"}},
      {"environment", {"kind", "rows", "cols", "file"}},
      {"searchers", {"starts", "zeta"}},
      {"capture", {"mode", "radius"}},
      {"motion", {"kind", "stay", "file"}},
      {"belief", {"kind", "vertices", "file"}},
      {"mission", {"deadline", "horizon", "gamma"}},
      {"solver",
       {"command", "timeout_centralized", "timeout_distributed", "threads",
        "gap", "presolve", "enumeration_cap"}},
      {"experiment",
       {"instances", "searchers", "zeta", "scenario", "belief_min",
        "belief_max", "planners", "simulate"}},
  };
  return keys;
}

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class Reader {
 public:
  explicit Reader(const pt::ptree& tree) : tree_(tree) {}

  std::optional<std::string> raw(const std::string& key) const {
    auto v = tree_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
    if (!v) return std::nullopt;
    return *v;
  }

  void str(const std::string& key, std::string& out) const {
    if (auto v = raw(key)) out = *v;
  }

  template <typename T>
  void integer(const std::string& key, T& out) const {
    auto v = raw(key);
    if (!v) return;
    T value{};
    auto [p, ec] = std::from_chars(v->data(), v->data() + v->size(), value);
    if (ec != std::errc() || p != v->data() + v->size()) {
      throw ConfigError(fmt::format("{}: '{}' is not an integer", key, *v));
    }
    out = value;
  }

  void real(const std::string& key, double& out) const {
    if (auto v = raw(key)) out = to_double(key, *v);
  }

  void boolean(const std::string& key, bool& out) const {
    auto v = raw(key);
    if (!v) return;
    if (*v == "true" || *v == "1" || *v == "yes") {
      out = true;
    } else if (*v == "false" || *v == "0" || *v == "no") {
      out = false;
    } else {
      throw ConfigError(fmt::format("{}: '{}' is not a boolean", key, *v));
    }
  }

  void vertices(const std::string& key, std::vector<Vertex>& out) const {
    auto v = raw(key);
    if (!v) return;
    out.clear();
    for (const auto& w : words(*v)) {
      int x = 0;
      auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), x);
      if (ec != std::errc() || p != w.data() + w.size()) {
        throw ConfigError(fmt::format("{}: '{}' is not a vertex", key, w));
      }
      out.push_back(x);
    }
  }

  void reals(const std::string& key, std::vector<double>& out) const {
    auto v = raw(key);
    if (!v) return;
    out.clear();
    for (const auto& w : words(*v)) out.push_back(to_double(key, w));
  }

  void list(const std::string& key, std::vector<std::string>& out) const {
    if (auto v = raw(key)) out = words(*v);
  }

 private:
  static double to_double(const std::string& key, const std::string& s) {
    double value = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || p != s.data() + s.size()) {
      throw ConfigError(fmt::format("{}: '{}' is not a number", key, s));
    }
    return value;
  }

  const pt::ptree& tree_;
};

std::string join_numbers(const std::vector<double>& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i > 0) out += ' ';
    out += format_number(v[i]);
  }
  return out;
}

std::string resolve(const RunConfig& c, const std::string& file) {
  std::filesystem::path p(file);
  if (p.is_relative() && !c.base_dir.empty()) {
    p = std::filesystem::path(c.base_dir) / p;
  }
  return p.string();
}

std::string read_file(const std::string& path, std::string_view what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(fmt::format("cannot open {} file '{}'", what, path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

bool RunConfig::operator==(const RunConfig& o) const {
  return serialize_config(*this) == serialize_config(o);
}

RunConfig parse_config(std::string_view text, std::string base_dir) {
  pt::ptree tree;
  try {
    std::istringstream in{std::string(text)};
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(fmt::format("config line {}: {}", e.line(), e.message()));
  }
  for (const auto& [section, body] : tree) {
    auto it = known_keys().find(section);
    if (it == known_keys().end()) {
      throw ConfigError(fmt::format("unknown config section '{}'", section));
    }
    for (const auto& [key, value] : body) {
      if (!it->second.contains(key)) {
        throw ConfigError(
            fmt::format("unknown config key '{}' in [{}]", key, section));
      }
    }
  }

  RunConfig c;
  c.base_dir = std::move(base_dir);
  Reader r(tree);
  r.str("run.id", c.id);
  r.integer("run.seed", c.seed);
  r.str("run.planner", c.planner);
  r.str("run.out", c.out);
  r.str("environment.kind", c.env_kind);
  r.integer("environment.rows", c.rows);
  r.integer("environment.cols", c.cols);
  r.str("environment.file", c.graph_file);
  r.vertices("searchers.starts", c.starts);
  r.reals("searchers.zeta", c.zeta);
  r.str("capture.mode", c.capture_mode);
  r.integer("capture.radius", c.capture_radius);
  r.str("motion.kind", c.motion_kind);
  r.real("motion.stay", c.stay_prob);
  r.str("motion.file", c.motion_file);
  r.str("belief.kind", c.belief_kind);
  r.vertices("belief.vertices", c.belief_vertices);
  r.str("belief.file", c.belief_file);
  r.integer("mission.deadline", c.deadline);
  r.integer("mission.horizon", c.horizon);
  r.real("mission.gamma", c.gamma);
  r.str("solver.command", c.solver_command);
  r.real("solver.timeout_centralized", c.timeout_centralized);
  r.real("solver.timeout_distributed", c.timeout_distributed);
  r.integer("solver.threads", c.threads);
  r.real("solver.gap", c.gap);
  r.boolean("solver.presolve", c.presolve);
  r.real("solver.enumeration_cap", c.enumeration_cap);
  r.integer("experiment.instances", c.instances);
  r.integer("experiment.searchers", c.exp_searchers);
  r.real("experiment.zeta", c.exp_zeta);
  r.str("experiment.scenario", c.scenario);
  r.integer("experiment.belief_min", c.belief_min);
  r.integer("experiment.belief_max", c.belief_max);
  r.list("experiment.planners", c.planners);
  r.boolean("experiment.simulate", c.simulate);

  if (c.env_kind != "grid" && c.env_kind != "file") {
    throw ConfigError(fmt::format("unknown environment kind '{}'", c.env_kind));
  }
  if (c.motion_kind != "static" && c.motion_kind != "random-walk" &&
      c.motion_kind != "file") {
    throw ConfigError(fmt::format("unknown motion kind '{}'", c.motion_kind));
  }
  if (c.belief_kind != "uniform" && c.belief_kind != "file") {
    throw ConfigError(fmt::format("unknown belief kind '{}'", c.belief_kind));
  }
  parse_capture_mode(c.capture_mode);
  parse_planner(c.planner);
  for (const auto& p : c.planners) parse_planner(p);
  parse_scenario(c.scenario);
  if (c.zeta.empty()) throw ConfigError("searchers.zeta is empty");
  if (c.starts.empty()) throw ConfigError("searchers.starts is empty");
  return c;
}

RunConfig load_config_file(const std::string& path) {
  std::string text = read_file(path, "config");
  return parse_config(text,
                      std::filesystem::path(path).parent_path().string());
}

std::string serialize_config(const RunConfig& c) {
  std::string out;
  auto line = [&out](std::string_view key, const std::string& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  out += "[run]\n";
  line("id", c.id);
  line("seed", std::to_string(c.seed));
  line("planner", c.planner);
  line("out", c.out);
  out += "\n[environment]\n";
  line("kind", c.env_kind);
  line("rows", std::to_string(c.rows));
  line("cols", std::to_string(c.cols));
  line("file", c.graph_file);
  out += "\n[searchers]\n";
  line("starts", fmt::format("{}", fmt::join(c.starts, " ")));
  line("zeta", join_numbers(c.zeta));
  out += "\n[capture]\n";
  line("mode", c.capture_mode);
  line("radius", std::to_string(c.capture_radius));
  out += "\n[motion]\n";
  line("kind", c.motion_kind);
  line("stay", format_number(c.stay_prob));
  line("file", c.motion_file);
  out += "\n[belief]\n";
  line("kind", c.belief_kind);
  line("vertices", fmt::format("{}", fmt::join(c.belief_vertices, " ")));
  line("file", c.belief_file);
  out += "\n[mission]\n";
  line("deadline", std::to_string(c.deadline));
  line("horizon", std::to_string(c.horizon));
  line("gamma", format_number(c.gamma));
  out += "\n[solver]\n";
  line("command", c.solver_command);
  line("timeout_centralized", format_number(c.timeout_centralized));
  line("timeout_distributed", format_number(c.timeout_distributed));
  line("threads", std::to_string(c.threads));
  line("gap", format_number(c.gap));
  line("presolve", c.presolve ? "true" : "false");
  line("enumeration_cap", format_number(c.enumeration_cap));
  out += "\n[experiment]\n";
  line("instances", std::to_string(c.instances));
  line("searchers", std::to_string(c.exp_searchers));
  line("zeta", format_number(c.exp_zeta));
  line("scenario", c.scenario);
  line("belief_min", std::to_string(c.belief_min));
  line("belief_max", std::to_string(c.belief_max));
  line("planners", fmt::format("{}", fmt::join(c.planners, " ")));
  line("simulate", c.simulate ? "true" : "false");
  return out;
}

std::string config_digest(const RunConfig& config) {
  RunConfig located = config;
  located.out.clear();
  return fnv1a_hex(serialize_config(located));
}

std::shared_ptr<const Environment> build_environment(const RunConfig& c) {
  if (c.env_kind == "grid") {
    return std::make_shared<const Environment>(build_grid(c.rows, c.cols));
  }
  std::string path = resolve(c, c.graph_file);
  return std::make_shared<const Environment>(
      load_graph(read_file(path, "graph")));
}

Instance build_instance(const RunConfig& c) {
  auto env = build_environment(c);
  const int n = env->graph.n();
  std::vector<double> zeta = c.zeta;
  if (zeta.size() == 1) zeta.assign(c.starts.size(), zeta.front());
  if (zeta.size() != c.starts.size()) {
    throw ConfigError(fmt::format("{} zeta values for {} searchers",
                                  zeta.size(), c.starts.size()));
  }
  CaptureConfig capture{parse_capture_mode(c.capture_mode), c.capture_radius,
                        zeta};
  MotionMatrix motion = c.motion_kind == "static" ? motion_static(n)
                        : c.motion_kind == "random-walk"
                            ? motion_random_walk(env->graph, c.stay_prob)
                            : load_motion(read_file(resolve(c, c.motion_file),
                                                    "motion"));
  for (Vertex v : c.belief_vertices) env->graph.check_vertex(v);
  BeliefVector belief =
      c.belief_kind == "uniform"
          ? BeliefVector::uniform(n, c.belief_vertices)
          : load_belief(read_file(resolve(c, c.belief_file), "belief"));
  Instance inst{env,    c.starts,   capture, motion,
                belief, c.deadline, c.horizon, c.gamma};
  inst.validate();
  return inst;
}

ExperimentConfig build_experiment(const RunConfig& c) {
  ExperimentConfig e;
  e.id = c.id;
  e.digest = config_digest(c);
  e.env = build_environment(c);
  if (c.env_kind == "grid") {
    e.grid_rows = c.rows;
    e.grid_cols = c.cols;
  }
  e.searchers = c.exp_searchers;
  e.capture_mode = parse_capture_mode(c.capture_mode);
  e.capture_radius = c.capture_radius;
  e.zeta = c.exp_zeta;
  if (c.motion_kind == "file") {
    throw ConfigError("experiments support static or random-walk motion only");
  }
  e.motion = c.motion_kind == "static" ? MotionKind::kStatic
                                       : MotionKind::kRandomWalk;
  e.stay_prob = c.stay_prob;
  e.scenario = parse_scenario(c.scenario);
  e.belief_min = c.belief_min;
  e.belief_max = c.belief_max;
  e.deadline = c.deadline;
  e.horizon = c.horizon;
  e.gamma = c.gamma;
  e.planners.clear();
  for (const auto& p : c.planners) e.planners.push_back(parse_planner(p));
  e.instances = c.instances;
  e.seed = c.seed;
  e.simulate = c.simulate;
  if (e.searchers < 1 || e.instances < 0 || e.belief_min < 1 ||
      e.belief_max < e.belief_min || e.belief_max > e.env->graph.n()) {
    throw ConfigError("experiment section out of range");
  }
  return e;
}

SolverSpec solver_spec(const RunConfig& c, bool distributed,
                       const std::string& fallback_command) {
  SolverSpec spec;
  spec.command = c.solver_command.empty() ? fallback_command : c.solver_command;
  spec.timeout_seconds =
      distributed ? c.timeout_distributed : c.timeout_centralized;
  spec.threads = c.threads;
  spec.gap_tolerance = c.gap;
  spec.presolve = c.presolve;
  spec.enumeration_cap = c.enumeration_cap;
  return spec;
}

}  // namespace mespp
