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

#include "mespp/milp.h"

#include <charconv>
#include <cmath>

#include <fmt/format.h>

#include "mespp/errors.h"

namespace mespp {
namespace {

VarRef make_var(VarFamily family, int searcher, int time, Vertex vertex,
                VarKind kind = VarKind::kContinuous) {
  VarRef ref{family, searcher, time, 0, vertex, kind, 0.0, 1.0};
  return ref;
}

VarRef x_var(int s, int t, Vertex v) {
  return make_var(VarFamily::kX, s, t, v, VarKind::kBinary);
}

VarRef y_var(int s, int t, Vertex u, Vertex v) {
  VarRef ref = make_var(VarFamily::kY, s, t, v, VarKind::kBinary);
  ref.from = u;
  return ref;
}

VarRef beta_var(int t, Vertex v) { return make_var(VarFamily::kBeta, 0, t, v); }
VarRef alpha_var(int t, Vertex v) {
  return make_var(VarFamily::kAlpha, 0, t, v);
}

// Accumulates the rows of one model in a fixed order.
class Builder {
 public:
  Builder(const Instance& instance, ModelKind kind)
      : inst_(instance),
        h_(instance.horizon),
        m_(instance.searchers()),
        n_(instance.n()),
        capture_(static_cast<size_t>(m_)) {
    inst_.validate();
    model_ = MilpModel(kind, std::make_shared<const Instance>(instance));
    model_.set_digest(instance.digest());
    for (int s = 1; s <= m_; ++s) {
      reach_.emplace_back(instance.graph(), instance.starts[s - 1], h_);
      auto& row = capture_[static_cast<size_t>(s - 1)];
      for (Vertex u = 1; u <= n_; ++u) {
        row.push_back(capture_matrix(*instance.env, instance.capture, s, u));
      }
    }
  }

  void path_rows();
  void motion_rows();
  void capture_rows(bool same_vertex);
  void fn_capture_rows();
  void mass_rows();
  void objective();

  MilpModel take() { return std::move(model_); }

 private:
  int var(const VarRef& ref) { return model_.add_variable(ref); }
  int ref(const VarRef& r) const { return model_.require(r.name()); }
  void row(std::string name, std::vector<Term> terms, Relation rel,
           double rhs) {
    std::erase_if(terms, [](const Term& t) { return t.coef == 0.0; });
    model_.add_constraint({std::move(name), std::move(terms), rel, rhs});
  }
  const ReachableSet& reach(int s) const { return reach_[s - 1]; }
  // x-variables of searcher s at time t whose capture matrix row v moves
  // mass into the capture column (C^{s,u}_{v0} == 1, or > 0 when
  // `positive_entry`).
  std::vector<int> covering_x(int s, int t, Vertex v, bool positive_entry);

  const Instance& inst_;
  int h_;
  int m_;
  int n_;
  std::vector<std::vector<CaptureMatrix>> capture_;
  std::vector<ReachableSet> reach_;
  MilpModel model_;
};

void Builder::path_rows() {
  const Graph& g = inst_.graph();
  for (int s = 1; s <= m_; ++s) {
    const auto& rs = reach(s);
    for (int t = 0; t <= h_; ++t) {
      for (Vertex v : rs.at(t)) var(x_var(s, t, v));
    }
    for (int t = 0; t < h_; ++t) {
      for (Vertex u : rs.at(t)) {
        for (Vertex v : g.neighbors_closed(u)) var(y_var(s, t, u, v));
      }
    }
    for (Vertex u : rs.at(h_)) var(y_var(s, h_, u, kGoalVertex));

    // Start and goal pinning.
    const Vertex start = rs.start();
    row(fmt::format("start_x_{}", s), {{ref(x_var(s, 0, start)), 1.0}},
        Relation::kEqual, 1.0);
    std::vector<Term> out_start;
    for (Vertex j : g.neighbors_closed(start)) {
      out_start.push_back({ref(y_var(s, 0, start, j)), 1.0});
    }
    row(fmt::format("start_y_{}", s), out_start, Relation::kEqual, 1.0);
    std::vector<Term> into_goal;
    for (Vertex j : rs.at(h_)) {
      into_goal.push_back({ref(y_var(s, h_, j, kGoalVertex)), 1.0});
    }
    row(fmt::format("goal_{}", s), into_goal, Relation::kEqual, 1.0);

    // Flow conservation through every reachable state.
    for (int t = 0; t <= h_; ++t) {
      for (Vertex v : rs.at(t)) {
        const int xv = ref(x_var(s, t, v));
        if (t >= 1) {
          std::vector<Term> in{{xv, 1.0}};
          for (Vertex j : g.neighbors_closed(v)) {
            if (rs.contains(j, t - 1)) {
              in.push_back({ref(y_var(s, t - 1, j, v)), -1.0});
            }
          }
          row(fmt::format("in_{}_{}_{}", s, t, v), in, Relation::kEqual, 0.0);
        }
        if (t < h_) {
          std::vector<Term> out{{xv, 1.0}};
          for (Vertex i : g.neighbors_closed(v)) {
            out.push_back({ref(y_var(s, t, v, i)), -1.0});
          }
          row(fmt::format("out_{}_{}_{}", s, t, v), out, Relation::kEqual,
              0.0);
        } else {
          row(fmt::format("goal_in_{}_{}", s, v),
              {{xv, 1.0}, {ref(y_var(s, h_, v, kGoalVertex)), -1.0}},
              Relation::kEqual, 0.0);
        }
      }
    }
  }
}

void Builder::motion_rows() {
  for (int t = 0; t <= h_; ++t) {
    var(beta_var(t, kCaptureIndex));
    for (Vertex v = 1; v <= n_; ++v) var(beta_var(t, v));
  }
  for (int t = 1; t <= h_; ++t) {
    for (Vertex v = 1; v <= n_; ++v) var(alpha_var(t, v));
  }
  const auto& b0 = inst_.initial_belief;
  row("init_c", {{ref(beta_var(0, kCaptureIndex)), 1.0}}, Relation::kEqual,
      b0.capture());
  for (Vertex v = 1; v <= n_; ++v) {
    row(fmt::format("init_{}", v), {{ref(beta_var(0, v)), 1.0}},
        Relation::kEqual, b0[v]);
  }
  const auto& motion = inst_.motion;
  for (int t = 1; t <= h_; ++t) {
    for (Vertex v = 1; v <= n_; ++v) {
      std::vector<Term> terms{{ref(alpha_var(t, v)), 1.0}};
      for (Vertex u = 1; u <= n_; ++u) {
        double p = motion(u, v);
        if (p != 0.0) terms.push_back({ref(beta_var(t - 1, u)), -p});
      }
      row(fmt::format("motion_{}_{}", t, v), terms, Relation::kEqual, 0.0);
    }
  }
}

std::vector<int> Builder::covering_x(int s, int t, Vertex v,
                                     bool positive_entry) {
  std::vector<int> out;
  for (Vertex u : reach(s).at(t)) {
    double entry = capture_[static_cast<size_t>(s - 1)][u - 1](v, 0);
    bool hit = positive_entry ? entry > 0.0 : entry == 1.0;
    if (hit) out.push_back(ref(x_var(s, t, u)));
  }
  return out;
}

void Builder::capture_rows(bool same_vertex) {
  for (int t = 1; t <= h_; ++t) {
    for (Vertex v = 1; v <= n_; ++v) {
      std::vector<int> xs;
      for (int s = 1; s <= m_; ++s) {
        if (same_vertex) {
          if (reach(s).contains(v, t)) xs.push_back(ref(x_var(s, t, v)));
        } else {
          auto cov = covering_x(s, t, v, /*positive_entry=*/false);
          xs.insert(xs.end(), cov.begin(), cov.end());
        }
      }
      const int beta = ref(beta_var(t, v));
      const int alpha = ref(alpha_var(t, v));
      if (xs.empty()) {
        // Nobody can sense v at t: the belief is the motion prediction.
        row(fmt::format("free_{}_{}", t, v), {{beta, 1.0}, {alpha, -1.0}},
            Relation::kEqual, 0.0);
        continue;
      }
      const int psi = var(make_var(VarFamily::kPsi, 0, t, v, VarKind::kBinary));
      row(fmt::format("lin_psi_{}_{}", t, v), {{beta, 1.0}, {psi, 1.0}},
          Relation::kLessEqual, 1.0);
      row(fmt::format("lin_alpha_{}_{}", t, v), {{beta, 1.0}, {alpha, -1.0}},
          Relation::kLessEqual, 0.0);
      row(fmt::format("lin_low_{}_{}", t, v),
          {{beta, 1.0}, {alpha, -1.0}, {psi, 1.0}}, Relation::kGreaterEqual,
          0.0);
      std::vector<Term> lo;
      std::vector<Term> hi{{psi, 1.0}};
      for (int x : xs) {
        lo.push_back({x, 1.0});
        hi.push_back({x, -1.0});
      }
      lo.push_back({psi, -static_cast<double>(m_)});
      row(fmt::format("cap_lo_{}_{}", t, v), lo, Relation::kLessEqual, 0.0);
      row(fmt::format("cap_hi_{}_{}", t, v), hi, Relation::kLessEqual, 0.0);
    }
  }
}

void Builder::fn_capture_rows() {
  for (int t = 1; t <= h_; ++t) {
    for (Vertex v = 1; v <= n_; ++v) {
      int prev = ref(alpha_var(t, v));
      for (int s = 1; s <= m_; ++s) {
        const double zeta = inst_.capture.zeta_of(s);
        const int beta_s =
            var(make_var(VarFamily::kBetaSearcher, s, t, v));
        auto xs = covering_x(s, t, v, /*positive_entry=*/true);
        if (xs.empty()) {
          row(fmt::format("fn_pass_{}_{}_{}", s, t, v),
              {{beta_s, 1.0}, {prev, -1.0}}, Relation::kEqual, 0.0);
          prev = beta_s;
          continue;
        }
        const int psi = var(
            make_var(VarFamily::kPsiSearcher, s, t, v, VarKind::kBinary));
        const int delta = var(make_var(VarFamily::kDelta, s, t, v));
        row(fmt::format("fn_lin_psi_{}_{}_{}", s, t, v),
            {{delta, 1.0}, {psi, 1.0}}, Relation::kLessEqual, 1.0);
        row(fmt::format("fn_lin_prev_{}_{}_{}", s, t, v),
            {{delta, 1.0}, {prev, -1.0}}, Relation::kLessEqual, 0.0);
        row(fmt::format("fn_lin_low_{}_{}_{}", s, t, v),
            {{delta, 1.0}, {prev, -1.0}, {psi, 1.0}}, Relation::kGreaterEqual,
            0.0);
        row(fmt::format("fn_belief_{}_{}_{}", s, t, v),
            {{beta_s, 1.0}, {delta, -(1.0 - zeta)}, {prev, -zeta}},
            Relation::kEqual, 0.0);
        std::vector<Term> lo;
        std::vector<Term> hi{{psi, 1.0}};
        for (int x : xs) {
          lo.push_back({x, 1.0});
          hi.push_back({x, -1.0});
        }
        lo.push_back({psi, -1.0});
        row(fmt::format("fn_cap_lo_{}_{}_{}", s, t, v), lo,
            Relation::kLessEqual, 0.0);
        row(fmt::format("fn_cap_hi_{}_{}_{}", s, t, v), hi,
            Relation::kLessEqual, 0.0);
        prev = beta_s;
      }
      row(fmt::format("fn_final_{}_{}", t, v),
          {{ref(beta_var(t, v)), 1.0}, {prev, -1.0}}, Relation::kEqual, 0.0);
    }
  }
}

void Builder::mass_rows() {
  for (int t = 1; t <= h_; ++t) {
    std::vector<Term> terms{{ref(beta_var(t, kCaptureIndex)), 1.0}};
    for (Vertex v = 1; v <= n_; ++v) terms.push_back({ref(beta_var(t, v)), 1.0});
    row(fmt::format("mass_{}", t), terms, Relation::kEqual, 1.0);
  }
}

void Builder::objective() {
  std::vector<Term> terms;
  for (int t = 0; t <= h_; ++t) {
    terms.push_back({ref(beta_var(t, kCaptureIndex)),
                     std::pow(inst_.gamma, static_cast<double>(t))});
  }
  model_.set_objective(std::move(terms));
}

std::optional<int> parse_int(std::string_view s) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  size_t begin = 0;
  while (true) {
    size_t end = s.find(sep, begin);
    out.push_back(s.substr(begin, end - begin));
    if (end == std::string_view::npos) break;
    begin = end + 1;
  }
  return out;
}

}  // namespace

std::string VarRef::name() const {
  switch (family) {
    case VarFamily::kX:
      return fmt::format("x_{}_{}_{}", searcher, time, vertex);
    case VarFamily::kY:
      if (vertex == kGoalVertex) {
        return fmt::format("y_{}_{}_{}_g", searcher, time, from);
      }
      return fmt::format("y_{}_{}_{}_{}", searcher, time, from, vertex);
    case VarFamily::kAlpha:
      return fmt::format("alpha_{}_{}", time, vertex);
    case VarFamily::kBeta:
      if (vertex == kCaptureIndex) return fmt::format("beta_c_{}", time);
      return fmt::format("beta_{}_{}", time, vertex);
    case VarFamily::kPsi:
      return fmt::format("psi_{}_{}", time, vertex);
    case VarFamily::kBetaSearcher:
      return fmt::format("betaS_{}_{}_{}", searcher, time, vertex);
    case VarFamily::kPsiSearcher:
      return fmt::format("psiS_{}_{}_{}", searcher, time, vertex);
    case VarFamily::kDelta:
      return fmt::format("delta_{}_{}_{}", searcher, time, vertex);
  }
  return {};
}

std::optional<VarRef> parse_var_name(std::string_view name) {
  auto parts = split(name, '_');
  std::vector<int> nums;
  auto numbers = [&](size_t from, size_t count) -> bool {
    if (parts.size() != from + count) return false;
    nums.clear();
    for (size_t i = from; i < parts.size(); ++i) {
      auto v = parse_int(parts[i]);
      if (!v) return false;
      nums.push_back(*v);
    }
    return true;
  };
  const auto head = parts[0];
  if (head == "x" && numbers(1, 3)) {
    return x_var(nums[0], nums[1], nums[2]);
  }
  if (head == "y" && parts.size() == 5 && parts[4] == "g") {
    parts.pop_back();
    if (!numbers(1, 3)) return std::nullopt;
    return y_var(nums[0], nums[1], nums[2], kGoalVertex);
  }
  if (head == "y" && numbers(1, 4)) {
    return y_var(nums[0], nums[1], nums[2], nums[3]);
  }
  if (head == "alpha" && numbers(1, 2)) return alpha_var(nums[0], nums[1]);
  if (head == "beta" && parts.size() == 3 && parts[1] == "c") {
    auto t = parse_int(parts[2]);
    if (!t) return std::nullopt;
    return beta_var(*t, kCaptureIndex);
  }
  if (head == "beta" && numbers(1, 2)) return beta_var(nums[0], nums[1]);
  if (head == "psi" && numbers(1, 2)) {
    return make_var(VarFamily::kPsi, 0, nums[0], nums[1], VarKind::kBinary);
  }
  if (head == "betaS" && numbers(1, 3)) {
    return make_var(VarFamily::kBetaSearcher, nums[0], nums[1], nums[2]);
  }
  if (head == "psiS" && numbers(1, 3)) {
    return make_var(VarFamily::kPsiSearcher, nums[0], nums[1], nums[2],
                    VarKind::kBinary);
  }
  if (head == "delta" && numbers(1, 3)) {
    return make_var(VarFamily::kDelta, nums[0], nums[1], nums[2]);
  }
  return std::nullopt;
}

std::string_view model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::kPartial:
      return "partial";
    case ModelKind::kSameVertex:
      return "SV";
    case ModelKind::kMultiVertex:
      return "MV";
    case ModelKind::kFalseNegative:
      return "FN-MV";
  }
  return "unknown";
}

MilpModel::MilpModel(ModelKind kind, std::shared_ptr<const Instance> instance)
    : kind_(kind), instance_(std::move(instance)) {}

int MilpModel::add_variable(const VarRef& var) {
  std::string name = var.name();
  auto [it, inserted] =
      index_.emplace(name, static_cast<int>(variables_.size()));
  if (!inserted) throw Error(fmt::format("duplicate variable '{}'", name));
  variables_.push_back(var);
  names_.push_back(std::move(name));
  return it->second;
}

int MilpModel::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

int MilpModel::require(const std::string& name) const {
  int idx = find(name);
  if (idx < 0) throw Error(fmt::format("undeclared variable '{}'", name));
  return idx;
}

void MilpModel::add_constraint(Constraint constraint) {
  for (const auto& term : constraint.terms) {
    if (term.var < 0 || term.var >= static_cast<int>(variables_.size())) {
      throw Error(fmt::format("constraint '{}' references undeclared variable",
                              constraint.name));
    }
  }
  auto [it, inserted] = constraint_index_.emplace(
      constraint.name, static_cast<int>(constraints_.size()));
  if (!inserted) {
    throw Error(fmt::format("duplicate constraint '{}'", constraint.name));
  }
  constraints_.push_back(std::move(constraint));
}

void MilpModel::set_objective(std::vector<Term> terms) {
  for (const auto& term : terms) {
    if (term.var < 0 || term.var >= static_cast<int>(variables_.size())) {
      throw Error("objective references undeclared variable");
    }
  }
  objective_ = std::move(terms);
}

const Constraint* MilpModel::constraint(const std::string& name) const {
  auto it = constraint_index_.find(name);
  return it == constraint_index_.end() ? nullptr : &constraints_[it->second];
}

size_t MilpModel::count(VarFamily family) const {
  size_t total = 0;
  for (const auto& v : variables_) total += v.family == family ? 1 : 0;
  return total;
}

MilpModel build_path_constraints(const Instance& instance) {
  Builder b(instance, ModelKind::kPartial);
  b.path_rows();
  return b.take();
}

MilpModel build_motion_constraints(const Instance& instance) {
  Builder b(instance, ModelKind::kPartial);
  b.motion_rows();
  return b.take();
}

MilpModel build_sv_model(const Instance& instance) {
  if (instance.capture.mode != CaptureMode::kSameVertex ||
      instance.capture.has_false_negatives()) {
    throw WrongModelError(
        "SV model needs same-vertex capture without false negatives; use "
        "build_mv_model for capture ranges or build_fn_model for false "
        "negatives");
  }
  Builder b(instance, ModelKind::kSameVertex);
  b.path_rows();
  b.motion_rows();
  b.capture_rows(/*same_vertex=*/true);
  b.mass_rows();
  b.objective();
  return b.take();
}

MilpModel build_mv_model(const Instance& instance) {
  if (instance.capture.has_false_negatives()) {
    throw WrongModelError(
        "MV model needs zero false-negative rates; use build_fn_model");
  }
  Builder b(instance, ModelKind::kMultiVertex);
  b.path_rows();
  b.motion_rows();
  b.capture_rows(/*same_vertex=*/false);
  b.mass_rows();
  b.objective();
  return b.take();
}

MilpModel build_fn_model(const Instance& instance) {
  Builder b(instance, ModelKind::kFalseNegative);
  b.path_rows();
  b.motion_rows();
  b.fn_capture_rows();
  b.mass_rows();
  b.objective();
  return b.take();
}

ModelKind model_kind_for(const Instance& instance) {
  if (instance.capture.has_false_negatives()) {
    return ModelKind::kFalseNegative;
  }
  if (instance.capture.mode == CaptureMode::kSameVertex) {
    return ModelKind::kSameVertex;
  }
  return ModelKind::kMultiVertex;
}

MilpModel build_model(const Instance& instance) {
  switch (model_kind_for(instance)) {
    case ModelKind::kSameVertex:
      return build_sv_model(instance);
    case ModelKind::kMultiVertex:
      return build_mv_model(instance);
    default:
      return build_fn_model(instance);
  }
}

MilpModel fix_searcher_path(const MilpModel& model, int searcher,
                            const std::vector<Vertex>& path) {
  const auto& inst = model.instance();
  if (!inst) throw InfeasibleFixingError("model carries no instance");
  if (searcher < 1 || searcher > inst->searchers()) {
    throw InfeasibleFixingError(
        fmt::format("no searcher {} in the model", searcher));
  }
  const int h = inst->horizon;
  if (static_cast<int>(path.size()) != h + 1) {
    throw InfeasibleFixingError(fmt::format(
        "path for searcher {} has {} vertices, horizon needs {}", searcher,
        path.size(), h + 1));
  }
  for (int t = 0; t <= h; ++t) {
    if (model.find(x_var(searcher, t, path[t]).name()) < 0) {
      throw InfeasibleFixingError(fmt::format(
          "searcher {} cannot be at vertex {} at t={}", searcher, path[t], t));
    }
    if (t > 0 && path[t] != path[t - 1] &&
        !inst->graph().adjacent(path[t - 1], path[t])) {
      throw InfeasibleFixingError(fmt::format(
          "searcher {} path jumps {} -> {} at t={}", searcher, path[t - 1],
          path[t], t));
    }
  }
  MilpModel out = model;
  const auto& vars = model.variables();
  for (size_t i = 0; i < vars.size(); ++i) {
    const auto& v = vars[i];
    if (v.family != VarFamily::kX || v.searcher != searcher) continue;
    double value = path[v.time] == v.vertex ? 1.0 : 0.0;
    out.add_constraint({fmt::format("fix_{}_{}_{}", searcher, v.time, v.vertex),
                        {{static_cast<int>(i), 1.0}},
                        Relation::kEqual,
                        value});
  }
  return out;
}

}  // namespace mespp
