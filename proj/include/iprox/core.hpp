// Copyright 2026 The iprox Authors
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

#ifndef IPROX_CORE_HPP_
#define IPROX_CORE_HPP_

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

namespace iprox {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Raised when an internal consistency check fails (e.g. a markedly negative
// duality gap). Never expected on valid input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Raised when an iterative method cannot finish: iteration caps, divergence,
// Lipschitz overflow.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Convex differentiable term with L-Lipschitz gradient. `strong_convexity`
// is the modulus mu (0 when merely convex).
struct SmoothTerm {
  std::function<double(const Vector&)> value;
  std::function<Vector(const Vector&)> gradient;
  double lipschitz = 1.0;
  double strong_convexity = 0.0;
  Index dimension = 0;
};

// Per-call stopping rule for a proximity operator.
struct ExactProx {};
struct GapBelow {
  double eps = 0.0;
};
struct Sweeps {
  std::int64_t count = 0;
};
using ProxTolerance = std::variant<ExactProx, GapBelow, Sweeps>;

// Approximate minimizer of (L/2)||x - y||^2 + h(x). `certified_gap` upper
// bounds the proximal-objective suboptimality of `point`.
struct ProxResult {
  Vector point;
  double certified_gap = 0.0;
  std::int64_t inner_iterations = 0;
};

// Proper lsc convex term; `value` may return +inf outside the domain.
struct NonsmoothTerm {
  std::function<double(const Vector&)> value;
  std::function<ProxResult(const Vector& center, double L,
                           const ProxTolerance& tolerance)>
      prox;
  Index dimension = 0;
};

// f = g + h.
struct CompositeProblem {
  SmoothTerm g;
  NonsmoothTerm h;
  Index dimension = 0;
};

// Checks that the pieces are set and that dimensions agree.
CompositeProblem make_problem(SmoothTerm g, NonsmoothTerm h);

// g(x) + h(x), +inf when h(x) is +inf.
double evaluate_objective(const CompositeProblem& problem, const Vector& x);

// (L/2)||x - y||^2 + h(x).
double proximal_objective(const NonsmoothTerm& h, const Vector& center,
                          double L, const Vector& x);

// Error magnitudes decaying as scale / k^exponent.
struct PolyDecay {
  double scale = 1.0;
  double exponent = 1.0;
};

// Error magnitudes decaying as scale * ratio^k.
struct GeometricDecay {
  double scale = 1.0;
  double ratio = 0.5;
};

struct ExactSolve {};
struct ConstantTolerance {
  double eps = 0.0;
};
struct FixedSweeps {
  std::int64_t sweeps = 1;
};
struct NoGradientError {};

using ProxSchedule = std::variant<ExactSolve, PolyDecay, GeometricDecay,
                                  ConstantTolerance, FixedSweeps>;
using GradientErrorSchedule =
    std::variant<NoGradientError, PolyDecay, GeometricDecay>;

enum class ErrorDirection {
  // Unit vector drawn per iteration from a generator seeded with (seed, k).
  kSeededRandom,
  // e_k along +grad(y_{k-1}), i.e. pushing the step further downhill than
  // intended; zero when the gradient vanishes.
  kTowardAscent,
};

struct ErrorSchedule {
  ProxSchedule prox = ExactSolve{};
  GradientErrorSchedule gradient = NoGradientError{};
  ErrorDirection direction = ErrorDirection::kTowardAscent;

  // Throws std::invalid_argument on negative magnitudes, exponent <= 0 or
  // ratio outside (0, 1).
  void validate() const;

  // Tolerance handed to the prox at outer iteration k >= 1.
  ProxTolerance prox_tolerance(std::int64_t k) const;

  // ||e_k|| at outer iteration k >= 1.
  double gradient_error_norm(std::int64_t k) const;

  // True when the prox is stopped on a duality-gap target.
  bool gap_based() const;
};

struct IterateRecord {
  std::int64_t k = 0;
  double f_xk = 0.0;
  // Objective at the running average (1/k) sum_{i=1..k} x_i.
  double f_avg = 0.0;
  // Lowest f(x_i) seen so far.
  double f_min = 0.0;
  std::optional<double> dist_to_opt;
  double eps_used = 0.0;
  // Scheduled prox tolerance; NaN when the schedule is not gap-based.
  double eps_target = std::numeric_limits<double>::quiet_NaN();
  double grad_err_norm = 0.0;
  std::int64_t inner_iters = 0;
  std::int64_t cumulative_inner_iters = 0;
  double L_estimate = 0.0;
};

class IterateTrace {
 public:
  // Throws std::invalid_argument unless record.k exceeds the last k (and the
  // first k is 1).
  void append(const IterateRecord& record);

  const std::vector<IterateRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const IterateRecord& back() const { return records_.back(); }
  const IterateRecord& operator[](std::size_t i) const { return records_[i]; }

  std::vector<double> eps_used() const;
  std::vector<double> grad_err_norms() const;

 private:
  std::vector<IterateRecord> records_;
};

}  // namespace iprox

#endif  // IPROX_CORE_HPP_
