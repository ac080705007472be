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

#include "mespp/belief.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

#include "mespp/errors.h"

namespace mespp {
namespace {

std::vector<double> read_numbers(std::string_view text, int* header_n) {
  std::istringstream in{std::string(text)};
  std::string raw;
  std::vector<double> numbers;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream fields(raw);
    std::string token;
    while (fields >> token) {
      if (header_n != nullptr && *header_n < 0) {
        if (token.rfind("n=", 0) != 0) {
          throw ParseError(line_no, "expected 'n=<int>' header");
        }
        try {
          *header_n = std::stoi(token.substr(2));
        } catch (const std::exception&) {
          throw ParseError(line_no, fmt::format("bad header '{}'", token));
        }
        if (*header_n < 1) throw ParseError(line_no, "n must be positive");
        continue;
      }
      try {
        size_t used = 0;
        double value = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument(token);
        numbers.push_back(value);
      } catch (const std::exception&) {
        throw ParseError(line_no, fmt::format("bad number '{}'", token));
      }
    }
  }
  return numbers;
}

}  // namespace

Environment::Environment(Graph g)
    : graph(std::move(g)), distances(all_pairs_distances(graph)) {}

MotionMatrix::MotionMatrix(int n, std::vector<double> row_major,
                           std::string kernel)
    : n_(n), entries_(std::move(row_major)), kernel_(std::move(kernel)) {
  if (n < 1 || entries_.size() != static_cast<size_t>(n) * n) {
    throw InvariantError(
        fmt::format("motion matrix needs {}x{} entries, got {}", n, n,
                    entries_.size()));
  }
  for (Vertex u = 1; u <= n_; ++u) {
    double total = 0.0;
    for (double p : row(u)) {
      if (!(p >= 0.0 && p <= 1.0)) {
        throw InvariantError(
            fmt::format("motion row {} has entry {} outside [0,1]", u, p));
      }
      total += p;
    }
    if (std::abs(total - 1.0) > kProbabilityTolerance) {
      throw InvariantError(
          fmt::format("motion row {} sums to {}, not 1", u, total));
    }
  }
}

bool MotionMatrix::respects(const Graph& g) const {
  if (g.n() != n_) return false;
  for (Vertex u = 1; u <= n_; ++u) {
    for (Vertex v = 1; v <= n_; ++v) {
      if ((*this)(u, v) > 0.0 && u != v && !g.adjacent(u, v)) return false;
    }
  }
  return true;
}

MotionMatrix motion_static(int n) {
  std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = 1.0;
  return MotionMatrix(n, std::move(m), "static");
}

MotionMatrix motion_random_walk(const Graph& g, double stay_prob) {
  if (!(stay_prob >= 0.0 && stay_prob <= 1.0)) {
    throw InvariantError(fmt::format("stay probability {} outside [0,1]",
                                     stay_prob));
  }
  const int n = g.n();
  std::vector<double> m(static_cast<size_t>(n) * n, 0.0);
  for (Vertex u = 1; u <= n; ++u) {
    auto at = [&](Vertex v) -> double& {
      return m[static_cast<size_t>((u - 1) * n + (v - 1))];
    };
    const auto& nb = g.neighbors(u);
    if (nb.empty()) {
      at(u) = 1.0;
      continue;
    }
    at(u) = stay_prob;
    double share = (1.0 - stay_prob) / static_cast<double>(nb.size());
    for (Vertex v : nb) at(v) = share;
  }
  return MotionMatrix(n, std::move(m),
                      fmt::format("random-walk stay={}", stay_prob));
}

MotionMatrix load_motion(std::string_view text) {
  int n = -1;
  auto numbers = read_numbers(text, &n);
  if (n < 0) throw ParseError(0, "motion file missing 'n=<int>' header");
  if (numbers.size() != static_cast<size_t>(n) * n) {
    throw ParseError(0, fmt::format("motion file: expected {} entries, got {}",
                                    n * n, numbers.size()));
  }
  return MotionMatrix(n, std::move(numbers), "file");
}

std::string write_motion(const MotionMatrix& m) {
  std::string out = fmt::format("n={}\n", m.n());
  for (Vertex u = 1; u <= m.n(); ++u) {
    out += fmt::format("{}\n", fmt::join(m.row(u), " "));
  }
  return out;
}

BeliefVector::BeliefVector(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw InvariantError("belief vector needs at least n+1 = 2 entries");
  }
  for (size_t i = 0; i < values_.size(); ++i) {
    double p = values_[i];
    if (!(p >= 0.0 && p <= 1.0)) {
      throw InvariantError(
          fmt::format("belief entry {} = {} outside [0,1]", i, p));
    }
  }
  if (std::abs(sum() - 1.0) > kProbabilityTolerance) {
    throw InvariantError(fmt::format("belief sums to {}, not 1", sum()));
  }
}

BeliefVector BeliefVector::uniform(int n, const std::vector<Vertex>& support) {
  if (support.empty()) throw InvariantError("uniform belief over empty support");
  std::vector<double> b(static_cast<size_t>(n) + 1, 0.0);
  for (Vertex v : support) {
    if (v < 1 || v > n) throw InvalidVertexError(v, n);
    if (b[v] != 0.0) {
      throw InvariantError(fmt::format("vertex {} repeated in support", v));
    }
    b[v] = 1.0 / static_cast<double>(support.size());
  }
  return BeliefVector(std::move(b));
}

double BeliefVector::sum() const {
  double total = 0.0;
  for (double p : values_) total += p;
  return total;
}

BeliefVector load_belief(std::string_view text) {
  return BeliefVector(read_numbers(text, nullptr));
}

bool CaptureConfig::has_false_negatives() const {
  return std::any_of(zeta.begin(), zeta.end(),
                     [](double z) { return z > 0.0; });
}

bool CaptureConfig::covers(const Environment& env, Vertex u, Vertex v) const {
  if (mode == CaptureMode::kSameVertex) return u == v;
  return env.distances(u, v) <= radius;
}

void CaptureConfig::validate(int searchers) const {
  if (radius < 0) throw InvariantError("capture radius must be >= 0");
  if (static_cast<int>(zeta.size()) != searchers) {
    throw InvariantError(fmt::format("{} false-negative rates for {} searchers",
                                     zeta.size(), searchers));
  }
  for (double z : zeta) {
    if (!(z >= 0.0 && z < 1.0)) {
      throw InvariantError(
          fmt::format("false-negative rate {} outside [0,1)", z));
    }
  }
}

std::string_view capture_mode_name(CaptureMode mode) {
  return mode == CaptureMode::kSameVertex ? "same-vertex" : "hop-radius";
}

CaptureMode parse_capture_mode(std::string_view name) {
  if (name == "same-vertex") return CaptureMode::kSameVertex;
  if (name == "hop-radius") return CaptureMode::kHopRadius;
  throw ConfigError(fmt::format("unknown capture mode '{}'", name));
}

CaptureMatrix::CaptureMatrix(std::vector<bool> covered, double zeta)
    : covered_(std::move(covered)), zeta_(zeta) {
  covered_[0] = false;
}

double CaptureMatrix::operator()(int i, int j) const {
  if (i == 0) return j == 0 ? 1.0 : 0.0;
  if (!covered_[i]) return i == j ? 1.0 : 0.0;
  if (j == 0) return 1.0 - zeta_;
  if (j == i) return zeta_;
  return 0.0;
}

void CaptureMatrix::apply(std::vector<double>& b) const {
  for (size_t v = 1; v < covered_.size(); ++v) {
    if (!covered_[v] || b[v] == 0.0) continue;
    b[0] += (1.0 - zeta_) * b[v];
    b[v] *= zeta_;
  }
}

CaptureMatrix capture_matrix(const Environment& env, const CaptureConfig& config,
                             int searcher, Vertex u) {
  env.graph.check_vertex(u);
  const int n = env.graph.n();
  std::vector<bool> covered(static_cast<size_t>(n) + 1, false);
  for (Vertex v = 1; v <= n; ++v) covered[v] = config.covers(env, u, v);
  return CaptureMatrix(std::move(covered), config.zeta_of(searcher));
}

BeliefVector update_belief(const BeliefVector& b, const MotionMatrix& motion,
                           const std::vector<Vertex>& positions,
                           const Environment& env, const CaptureConfig& config) {
  const int n = b.n();
  std::vector<double> next(static_cast<size_t>(n) + 1, 0.0);
  next[0] = b.capture();
  for (Vertex u = 1; u <= n; ++u) {
    double mass = b[u];
    if (mass == 0.0) continue;
    auto row = motion.row(u);
    for (Vertex v = 1; v <= n; ++v) next[v] += mass * row[v - 1];
  }
  for (size_t s = 0; s < positions.size(); ++s) {
    capture_matrix(env, config, static_cast<int>(s) + 1, positions[s])
        .apply(next);
  }
  // Capture mass is only ever rounded up, and renormalization rescales the
  // location entries alone, so b_c never drops by rounding.
  if (std::abs(next[0] - 1.0) < kClampTolerance) next[0] = 1.0;
  double located = 0.0;
  for (size_t v = 1; v < next.size(); ++v) {
    double& p = next[v];
    if (std::abs(p) < kClampTolerance) p = 0.0;
    if (std::abs(p - 1.0) < kClampTolerance) p = 1.0;
    located += p;
  }
  if (located == 0.0) {
    next[0] = 1.0;
  } else {
    const double scale = (1.0 - next[0]) / located;
    for (size_t v = 1; v < next.size(); ++v) next[v] *= scale;
  }
  return BeliefVector(std::move(next));
}

double discounted_reward(std::span<const double> capture, double gamma) {
  double reward = 0.0;
  for (size_t t = 0; t < capture.size(); ++t) {
    reward += std::pow(gamma, static_cast<double>(t)) * capture[t];
  }
  return reward;
}

}  // namespace mespp
