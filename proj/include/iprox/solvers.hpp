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

#ifndef IPROX_SOLVERS_HPP_
#define IPROX_SOLVERS_HPP_

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "iprox/core.hpp"

namespace iprox {

enum class Variant { kBasicConvex, kAccelConvex, kBasicStrong, kAccelStrong };

struct FixedLipschitz {
  double L = 1.0;
};
// Start at `initial` and double whenever the quadratic upper bound fails.
struct DoublingLipschitz {
  double initial = 1.0;
};
using LipschitzMode = std::variant<FixedLipschitz, DoublingLipschitz>;

struct SolverConfig {
  Variant variant = Variant::kBasicConvex;
  std::int64_t max_outer = 100;
  ErrorSchedule schedule;
  LipschitzMode lipschitz = FixedLipschitz{};
  // Strong-convexity modulus; required > 0 for the strong variants.
  double mu = 0.0;
  Vector x0;
  std::uint64_t seed = 0;
  // Known minimizer; when present the trace records ||x_k - x*||.
  std::optional<Vector> reference;
  // Stop once the cumulative inner-iteration count reaches this value.
  std::optional<std::int64_t> inner_budget;
};

struct RunResult {
  IterateTrace trace;
  Vector final_x;
  Vector final_avg_x;
  // Lipschitz estimate accepted at each outer iteration.
  std::vector<double> L_history;
};

struct StepResult {
  Vector x;
  double eps_achieved = 0.0;
  double error_norm = 0.0;
  std::int64_t inner_iterations = 0;
};

inline constexpr double kDivergenceThreshold = 1e12;
inline constexpr double kLipschitzOverflow = 1e30;
// Relative slack in the descent test, absorbing rounding when the curvature
// along the step equals the estimate exactly.
inline constexpr double kDescentSlack = 1e-12;

// e_k for outer iteration k: norm from the schedule, direction from the
// schedule's rule. Deterministic in (schedule, k, grad, seed).
Vector make_error_vector(const ErrorSchedule& schedule, std::int64_t k,
                         const Vector& grad, std::uint64_t seed);

// x_k = prox_L[y - (grad g(y) + e_k) / L] with the prox stopped per the
// schedule at iteration k.
StepResult step_inexact_pg(const CompositeProblem& problem,
                           const Vector& y_prev, std::int64_t k,
                           const ErrorSchedule& schedule, double L,
                           std::uint64_t seed = 0);

// g(x) <= g(y) + <grad g(y), x - y> + (L/2)||x - y||^2, up to kDescentSlack.
bool descent_condition_holds(const SmoothTerm& g, const Vector& x,
                             const Vector& y, double L);

// 2L when the descent condition fails at (x_k, y_prev), else L. Throws
// SolverError past kLipschitzOverflow.
double estimate_lipschitz_doubling(const CompositeProblem& problem,
                                   const Vector& x_k, const Vector& y_prev,
                                   double L);

// y_k = x_k.
RunResult run_basic_pg(const CompositeProblem& problem,
                       const SolverConfig& config);
// y_k = x_k + (k-1)/(k+2) (x_k - x_{k-1}).
RunResult run_accel_pg_convex(const CompositeProblem& problem,
                              const SolverConfig& config);
// y_k = x_k + (1-sqrt(gamma))/(1+sqrt(gamma)) (x_k - x_{k-1}), gamma = mu/L.
RunResult run_accel_pg_strong(const CompositeProblem& problem,
                              const SolverConfig& config);

// Dispatches on config.variant.
RunResult run_solver(const CompositeProblem& problem,
                     const SolverConfig& config);

// Momentum coefficient applied after outer iteration k.
double momentum(Variant variant, std::int64_t k, double mu, double L);

const char* variant_name(Variant variant);

}  // namespace iprox

#endif  // IPROX_SOLVERS_HPP_
