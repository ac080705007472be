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

#include <chrono>
#include <cmath>

#include <fmt/format.h>

#include "mespp/errors.h"
#include "mespp/solver.h"

namespace mespp {
namespace {

constexpr double kTieTolerance = 1e-12;

// Time-major depth-first expansion: each level advances every free searcher
// by one delta' move, so the belief prefix is shared by all completions.
class JointSearch {
 public:
  JointSearch(const Instance& instance, const EnumerationOptions& options)
      : inst_(instance), fixed_(options.fixed), h_(instance.horizon) {
    fixed_.resize(static_cast<size_t>(instance.searchers()));
    current_.paths.resize(fixed_.size());
    for (size_t s = 0; s < fixed_.size(); ++s) {
      current_.paths[s].push_back(instance.starts[s]);
    }
  }

  void run() {
    expand(0, inst_.initial_belief, inst_.initial_belief.capture());
  }

  bool found() const { return found_; }
  const JointPlan& best() const { return best_; }
  std::uint64_t leaves() const { return leaves_; }

 private:
  void expand(int t, const BeliefVector& belief, double reward) {
    if (t == h_) {
      score(reward);
      return;
    }
    choose(t, 0, belief, reward);
  }

  // Picks searcher s's vertex at t+1, then recurses to the next searcher.
  void choose(int t, size_t s, const BeliefVector& belief, double reward) {
    if (s == fixed_.size()) {
      auto next = update_belief(belief, inst_.motion, current_.at(t + 1),
                                *inst_.env, inst_.capture);
      double gained =
          std::pow(inst_.gamma, static_cast<double>(t + 1)) * next.capture();
      expand(t + 1, next, reward + gained);
      return;
    }
    auto& path = current_.paths[s];
    if (fixed_[s]) {
      path.push_back((*fixed_[s])[t + 1]);
      choose(t, s + 1, belief, reward);
      path.pop_back();
      return;
    }
    for (Vertex v : inst_.graph().neighbors_closed(path.back())) {
      path.push_back(v);
      choose(t, s + 1, belief, reward);
      path.pop_back();
    }
  }

  void score(double reward) {
    ++leaves_;
    if (!found_ || reward > best_reward_ + kTieTolerance ||
        (reward >= best_reward_ - kTieTolerance && current_ < best_)) {
      found_ = true;
      best_reward_ = reward;
      best_ = current_;
    }
  }

  const Instance& inst_;
  std::vector<std::optional<std::vector<Vertex>>> fixed_;
  int h_;
  JointPlan current_;
  JointPlan best_;
  double best_reward_ = 0.0;
  bool found_ = false;
  std::uint64_t leaves_ = 0;
};

}  // namespace

double count_paths(const Graph& g, Vertex start, int horizon) {
  g.check_vertex(start);
  std::vector<double> ways(static_cast<size_t>(g.n()) + 1, 0.0);
  ways[start] = 1.0;
  for (int t = 0; t < horizon; ++t) {
    std::vector<double> next(ways.size(), 0.0);
    for (Vertex v = 1; v <= g.n(); ++v) {
      if (ways[v] == 0.0) continue;
      for (Vertex w : g.neighbors_closed(v)) next[w] += ways[v];
    }
    ways = std::move(next);
  }
  double total = 0.0;
  for (double w : ways) total += w;
  return total;
}

double enumeration_size(const Instance& instance,
                        const EnumerationOptions& options) {
  double size = 1.0;
  for (int s = 1; s <= instance.searchers(); ++s) {
    bool pinned = static_cast<size_t>(s) <= options.fixed.size() &&
                  options.fixed[s - 1].has_value();
    if (!pinned) {
      size *= count_paths(instance.graph(), instance.starts[s - 1],
                          instance.horizon);
    }
  }
  if (size > options.cap) throw EnumerationCapError(size, options.cap);
  return size;
}

SolveResult solve_enumeration(const Instance& instance,
                              const EnumerationOptions& options) {
  instance.validate();
  if (options.fixed.size() > static_cast<size_t>(instance.searchers())) {
    throw Error("more fixed paths than searchers");
  }
  for (size_t s = 0; s < options.fixed.size(); ++s) {
    if (!options.fixed[s]) continue;
    const auto& path = *options.fixed[s];
    if (static_cast<int>(path.size()) != instance.horizon + 1 ||
        path[0] != instance.starts[s]) {
      throw InfeasibleFixingError(fmt::format(
          "fixed path of searcher {} must start at {} and hold {} vertices",
          s + 1, instance.starts[s], instance.horizon + 1));
    }
  }
  enumeration_size(instance, options);
  const auto start = std::chrono::steady_clock::now();
  JointSearch search(instance, options);
  search.run();
  SolveResult result;
  result.solver = "enumeration";
  result.status = SolveStatus::kOptimal;
  result.plan = search.best();
  // Re-score the winner through the plan evaluator; bitwise identical to the
  // incremental sum but also re-checks legality of fixed paths.
  result.objective = evaluate_joint_plan(instance, search.best()).reward;
  result.mip_gap = 0.0;
  result.leaves = search.leaves();
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return result;
}

}  // namespace mespp
