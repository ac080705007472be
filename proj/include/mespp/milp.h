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

#ifndef MESPP_MILP_H_
#define MESPP_MILP_H_

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "mespp/instance.h"

namespace mespp {

// Variable families of the search models:
//   x      searcher s occupies v at t
//   y      searcher s moves u -> v between t and t+1 (v may be the dummy goal)
//   alpha  belief after target motion, before sensing
//   beta   belief after sensing (vertex 0 is the capture mass)
//   psi    some searcher covers v at t
//   betaS, psiS, delta: per-searcher chain of the false-negative model
enum class VarFamily { kX, kY, kAlpha, kBeta, kPsi, kBetaSearcher,
                       kPsiSearcher, kDelta };
enum class VarKind { kBinary, kContinuous };

// Destination index used for the dummy goal in y-variables.
inline constexpr Vertex kGoalVertex = -1;
// Vertex index used for the capture entry in beta-variables.
inline constexpr Vertex kCaptureIndex = 0;

struct VarRef {
  VarFamily family;
  int searcher = 0;
  int time = 0;
  Vertex from = 0;  // y only
  Vertex vertex = 0;
  VarKind kind = VarKind::kContinuous;
  double lower = 0.0;
  double upper = 1.0;

  // x_<s>_<t>_<v>, y_<s>_<t>_<u>_<v|g>, alpha_<t>_<v>, beta_<t>_<v>,
  // beta_c_<t>, psi_<t>_<v>, betaS_/psiS_/delta_<s>_<t>_<v>.
  std::string name() const;
};

// Inverse of VarRef::name(); kind and bounds are the family defaults.
std::optional<VarRef> parse_var_name(std::string_view name);

enum class Relation { kEqual, kLessEqual, kGreaterEqual };

struct Term {
  int var;
  double coef;
  bool operator==(const Term&) const = default;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Relation relation;
  double rhs;
  bool operator==(const Constraint&) const = default;
};

enum class ModelKind { kPartial, kSameVertex, kMultiVertex, kFalseNegative };

std::string_view model_kind_name(ModelKind kind);

// Solver-agnostic maximization model. Building functions return a finished
// model by value; fix_searcher_path derives a new one.
class MilpModel {
 public:
  MilpModel() = default;
  MilpModel(ModelKind kind, std::shared_ptr<const Instance> instance);

  // Throws on duplicate variable names.
  int add_variable(const VarRef& var);
  // -1 when absent.
  int find(const std::string& name) const;
  int find(const VarRef& ref) const { return find(ref.name()); }
  // Like find() but throws when absent.
  int require(const std::string& name) const;
  // Throws on duplicate names or undeclared variable indices.
  void add_constraint(Constraint constraint);
  void set_objective(std::vector<Term> terms);

  const std::vector<VarRef>& variables() const { return variables_; }
  const std::vector<std::string>& variable_names() const { return names_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  const std::vector<Term>& objective() const { return objective_; }
  const Constraint* constraint(const std::string& name) const;

  ModelKind kind() const { return kind_; }
  void set_kind(ModelKind kind) { kind_ = kind; }
  const std::string& digest() const { return digest_; }
  void set_digest(std::string digest) { digest_ = std::move(digest); }
  // Instance the model was built from; null for models read back from text.
  const std::shared_ptr<const Instance>& instance() const { return instance_; }

  size_t count(VarFamily family) const;

 private:
  ModelKind kind_ = ModelKind::kPartial;
  std::string digest_;
  std::shared_ptr<const Instance> instance_;
  std::vector<VarRef> variables_;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<Constraint> constraints_;
  std::unordered_map<std::string, int> constraint_index_;
  std::vector<Term> objective_;
};

// Legal-path structure: start pinning, flow conservation over delta' and the
// dummy-goal arcs at t = h. Variables: x over reachable states, y over moves.
MilpModel build_path_constraints(const Instance& instance);
// Initial-belief pinning and alpha^t_v = sum_u M(u,v) beta^{t-1}_u.
MilpModel build_motion_constraints(const Instance& instance);

// Same-vertex capture, no false negatives.
MilpModel build_sv_model(const Instance& instance);
// Arbitrary capture range, no false negatives.
MilpModel build_mv_model(const Instance& instance);
// Arbitrary capture range with per-searcher false negatives.
MilpModel build_fn_model(const Instance& instance);
// Picks SV, MV or FN from the capture configuration.
MilpModel build_model(const Instance& instance);
ModelKind model_kind_for(const Instance& instance);

// Pins x^{s,t}_v to 1 on the path and 0 elsewhere, via equality rows.
// `path` must hold horizon + 1 vertices inside searcher s's reachable set.
MilpModel fix_searcher_path(const MilpModel& model, int searcher,
                            const std::vector<Vertex>& path);

}  // namespace mespp

#endif  // MESPP_MILP_H_
