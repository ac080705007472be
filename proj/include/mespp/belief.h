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

#ifndef MESPP_BELIEF_H_
#define MESPP_BELIEF_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mespp/graph.h"

namespace mespp {

inline constexpr double kProbabilityTolerance = 1e-9;
inline constexpr double kClampTolerance = 1e-12;

// Graph plus its hop distances; shared read-only by instances and workers.
struct Environment {
  explicit Environment(Graph g);

  Graph graph;
  DistanceMatrix distances;
};

// Row-stochastic target transition matrix, M(u, v) = P(u -> v), 1-based.
class MotionMatrix {
 public:
  MotionMatrix(int n, std::vector<double> row_major, std::string kernel);

  int n() const { return n_; }
  double operator()(Vertex u, Vertex v) const {
    return entries_[static_cast<size_t>((u - 1) * n_ + (v - 1))];
  }
  std::span<const double> row(Vertex u) const {
    return {entries_.data() + static_cast<size_t>(u - 1) * n_,
            static_cast<size_t>(n_)};
  }
  // Free-form description of how the matrix was produced, kept for metadata.
  const std::string& kernel() const { return kernel_; }
  // True when every positive entry M(u, v) has v in delta'(u).
  bool respects(const Graph& g) const;

 private:
  int n_;
  std::vector<double> entries_;
  std::string kernel_;
};

MotionMatrix motion_static(int n);
// Lazy random walk: stay with `stay_prob`, otherwise move to a uniformly
// chosen neighbor. Isolated vertices keep all their mass.
MotionMatrix motion_random_walk(const Graph& g, double stay_prob);
// `n=<int>` header then n rows of n numbers; '#' comments.
MotionMatrix load_motion(std::string_view text);
std::string write_motion(const MotionMatrix& m);

// [b_c, b_1, ..., b_n]: capture mass first, then target location mass.
class BeliefVector {
 public:
  explicit BeliefVector(std::vector<double> values);

  // Uniform mass over `support`, zero capture mass.
  static BeliefVector uniform(int n, const std::vector<Vertex>& support);

  int n() const { return static_cast<int>(values_.size()) - 1; }
  double capture() const { return values_[0]; }
  double operator[](size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }
  double sum() const;

 private:
  std::vector<double> values_;
};

// Initial-belief file: n+1 numbers, capture mass first; '#' comments.
BeliefVector load_belief(std::string_view text);

enum class CaptureMode { kSameVertex, kHopRadius };

struct CaptureConfig {
  CaptureMode mode = CaptureMode::kSameVertex;
  int radius = 0;
  // Per-searcher false-negative rate in [0, 1).
  std::vector<double> zeta;

  double zeta_of(int searcher) const { return zeta[searcher - 1]; }
  bool has_false_negatives() const;
  // Whether a searcher standing on u can detect a target on v.
  bool covers(const Environment& env, Vertex u, Vertex v) const;
  void validate(int searchers) const;
};

std::string_view capture_mode_name(CaptureMode mode);
CaptureMode parse_capture_mode(std::string_view name);

// (n+1)x(n+1) matrix moving detected mass of covered vertices into column 0.
// Stored structurally: a covered flag per vertex and the searcher's zeta.
class CaptureMatrix {
 public:
  CaptureMatrix(std::vector<bool> covered, double zeta);

  int n() const { return static_cast<int>(covered_.size()) - 1; }
  bool covered(Vertex v) const { return covered_[v]; }
  double zeta() const { return zeta_; }
  // Entry (i, j) with rows/cols indexed 0..n.
  double operator()(int i, int j) const;
  // In-place b <- b * C.
  void apply(std::vector<double>& b) const;

 private:
  std::vector<bool> covered_;
  double zeta_;
};

CaptureMatrix capture_matrix(const Environment& env, const CaptureConfig& config,
                             int searcher, Vertex u);

// One step of the belief recursion:
//   b(t+1) = b(t) * blockdiag(1, M) * prod_s C^{s, positions[s]}.
// Entries within 1e-12 of 0 or 1 are clamped (b_c only upward) and the
// location entries rescaled so the vector sums to 1.
BeliefVector update_belief(const BeliefVector& b, const MotionMatrix& motion,
                           const std::vector<Vertex>& positions,
                           const Environment& env, const CaptureConfig& config);

// sum_t gamma^t * capture[t].
double discounted_reward(std::span<const double> capture, double gamma);

}  // namespace mespp

#endif  // MESPP_BELIEF_H_
