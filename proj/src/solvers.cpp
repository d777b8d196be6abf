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

#include "iprox/solvers.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace iprox {
namespace {

double initial_lipschitz(const LipschitzMode& mode) {
  if (const auto* fixed = std::get_if<FixedLipschitz>(&mode)) return fixed->L;
  return std::get<DoublingLipschitz>(mode).initial;
}

bool is_strong(Variant variant) {
  return variant == Variant::kBasicStrong || variant == Variant::kAccelStrong;
}

void validate_config(const CompositeProblem& problem,
                     const SolverConfig& config) {
  if (config.max_outer < 1) {
    throw std::invalid_argument("max_outer must be at least 1");
  }
  if (config.x0.size() != problem.dimension) {
    throw std::invalid_argument("x0 dimension does not match the problem");
  }
  if (config.reference && config.reference->size() != problem.dimension) {
    throw std::invalid_argument(
        "reference dimension does not match the problem");
  }
  if (config.inner_budget && *config.inner_budget < 1) {
    throw std::invalid_argument("inner budget must be positive");
  }
  config.schedule.validate();
  const double L0 = initial_lipschitz(config.lipschitz);
  if (!(L0 > 0.0) || !std::isfinite(L0)) {
    throw std::invalid_argument("Lipschitz estimate must be positive");
  }
  if (is_strong(config.variant)) {
    if (!(config.mu > 0.0)) {
      throw std::invalid_argument(
          "strongly convex variants require mu > 0");
    }
    if (config.mu > L0) {
      throw std::invalid_argument("mu exceeds the Lipschitz estimate");
    }
  } else if (config.mu < 0.0) {
    throw std::invalid_argument("mu must be nonnegative");
  }
}

// Shared outer loop; the variants differ only in the momentum coefficient.
RunResult run_momentum_method(const CompositeProblem& problem,
                              const SolverConfig& config) {
  validate_config(problem, config);
  const bool doubling =
      std::holds_alternative<DoublingLipschitz>(config.lipschitz);
  double L = initial_lipschitz(config.lipschitz);

  const double f0 = evaluate_objective(problem, config.x0);
  if (!std::isfinite(f0)) {
    throw std::invalid_argument("objective is not finite at x0");
  }

  RunResult result;
  Vector x_prev = config.x0;
  Vector y = config.x0;
  Vector running_sum = Vector::Zero(problem.dimension);
  double f_min = kInfinity;
  std::int64_t cumulative = 0;

  for (std::int64_t k = 1; k <= config.max_outer; ++k) {
    std::int64_t inner = 0;
    StepResult step;
    while (true) {
      step = step_inexact_pg(problem, y, k, config.schedule, L, config.seed);
      inner += step.inner_iterations;
      if (!doubling || descent_condition_holds(problem.g, step.x, y, L)) break;
      L *= 2.0;
      if (L > kLipschitzOverflow) {
        throw SolverError("Lipschitz estimate overflowed");
      }
    }
    cumulative += inner;

    running_sum += step.x;
    const Vector average = running_sum / static_cast<double>(k);

    IterateRecord record;
    record.k = k;
    record.f_xk = evaluate_objective(problem, step.x);
    if (!(record.f_xk <= f0 + kDivergenceThreshold)) {
      throw SolverError("divergence at iteration " + std::to_string(k) +
                        ": f(x_k) = " + std::to_string(record.f_xk) +
                        ", f(x_0) = " + std::to_string(f0));
    }
    record.f_avg = evaluate_objective(problem, average);
    f_min = std::min(f_min, record.f_xk);
    record.f_min = f_min;
    if (config.reference) {
      record.dist_to_opt = (step.x - *config.reference).norm();
    }
    record.eps_used = step.eps_achieved;
    if (config.schedule.gap_based()) {
      record.eps_target =
          std::get<GapBelow>(config.schedule.prox_tolerance(k)).eps;
    }
    record.grad_err_norm = step.error_norm;
    record.inner_iters = inner;
    record.cumulative_inner_iters = cumulative;
    record.L_estimate = L;
    result.trace.append(record);
    result.L_history.push_back(L);

    const double beta = momentum(config.variant, k, config.mu, L);
    y = step.x + beta * (step.x - x_prev);
    x_prev = std::move(step.x);
    result.final_avg_x = average;

    if (config.inner_budget && cumulative >= *config.inner_budget) break;
  }
  result.final_x = x_prev;
  return result;
}

}  // namespace

Vector make_error_vector(const ErrorSchedule& schedule, std::int64_t k,
                         const Vector& grad, std::uint64_t seed) {
  const double magnitude = schedule.gradient_error_norm(k);
  Vector e = Vector::Zero(grad.size());
  if (magnitude == 0.0 || grad.size() == 0) return e;

  switch (schedule.direction) {
    case ErrorDirection::kTowardAscent: {
      const double norm = grad.norm();
      if (norm > 0.0) e = grad * (magnitude / norm);
      break;
    }
    case ErrorDirection::kSeededRandom: {
      std::seed_seq seq{static_cast<std::uint32_t>(seed),
                        static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(k),
                        static_cast<std::uint32_t>(k >> 32)};
      std::mt19937_64 rng(seq);
      std::normal_distribution<double> normal;
      double norm = 0.0;
      while (norm == 0.0) {
        for (Index i = 0; i < e.size(); ++i) e[i] = normal(rng);
        norm = e.norm();
      }
      e *= magnitude / norm;
      break;
    }
  }
  return e;
}

StepResult step_inexact_pg(const CompositeProblem& problem,
                           const Vector& y_prev, std::int64_t k,
                           const ErrorSchedule& schedule, double L,
                           std::uint64_t seed) {
  if (!(L > 0.0)) throw std::invalid_argument("step: L must be positive");
  if (k < 1) throw std::invalid_argument("step: k must be at least 1");
  if (y_prev.size() != problem.dimension) {
    throw std::invalid_argument("step: dimension mismatch");
  }
  const Vector grad = problem.g.gradient(y_prev);
  const Vector error = make_error_vector(schedule, k, grad, seed);
  const Vector center = y_prev - (grad + error) / L;
  ProxResult prox = problem.h.prox(center, L, schedule.prox_tolerance(k));
  return StepResult{std::move(prox.point), prox.certified_gap, error.norm(),
                    prox.inner_iterations};
}

bool descent_condition_holds(const SmoothTerm& g, const Vector& x,
                             const Vector& y, double L) {
  const double gy = g.value(y);
  const Vector diff = x - y;
  const double model =
      gy + g.gradient(y).dot(diff) + 0.5 * L * diff.squaredNorm();
  return g.value(x) <= model + kDescentSlack * (1.0 + std::abs(gy));
}

double estimate_lipschitz_doubling(const CompositeProblem& problem,
                                   const Vector& x_k, const Vector& y_prev,
                                   double L) {
  if (!(L > 0.0)) throw std::invalid_argument("L must be positive");
  if (descent_condition_holds(problem.g, x_k, y_prev, L)) return L;
  const double doubled = 2.0 * L;
  if (doubled > kLipschitzOverflow) {
    throw SolverError("Lipschitz estimate overflowed");
  }
  return doubled;
}

double momentum(Variant variant, std::int64_t k, double mu, double L) {
  switch (variant) {
    case Variant::kBasicConvex:
    case Variant::kBasicStrong:
      return 0.0;
    case Variant::kAccelConvex:
      return static_cast<double>(k - 1) / static_cast<double>(k + 2);
    case Variant::kAccelStrong: {
      const double root = std::sqrt(std::min(mu / L, 1.0));
      return (1.0 - root) / (1.0 + root);
    }
  }
  return 0.0;
}

RunResult run_basic_pg(const CompositeProblem& problem,
                       const SolverConfig& config) {
  if (config.variant != Variant::kBasicConvex &&
      config.variant != Variant::kBasicStrong) {
    throw std::invalid_argument("run_basic_pg needs a basic variant");
  }
  return run_momentum_method(problem, config);
}

RunResult run_accel_pg_convex(const CompositeProblem& problem,
                              const SolverConfig& config) {
  if (config.variant != Variant::kAccelConvex) {
    throw std::invalid_argument("run_accel_pg_convex needs AccelConvex");
  }
  return run_momentum_method(problem, config);
}

RunResult run_accel_pg_strong(const CompositeProblem& problem,
                              const SolverConfig& config) {
  if (config.variant != Variant::kAccelStrong) {
    throw std::invalid_argument("run_accel_pg_strong needs AccelStrong");
  }
  return run_momentum_method(problem, config);
}

RunResult run_solver(const CompositeProblem& problem,
                     const SolverConfig& config) {
  switch (config.variant) {
    case Variant::kBasicConvex:
    case Variant::kBasicStrong:
      return run_basic_pg(problem, config);
    case Variant::kAccelConvex:
      return run_accel_pg_convex(problem, config);
    case Variant::kAccelStrong:
      return run_accel_pg_strong(problem, config);
  }
  throw std::invalid_argument("unknown solver variant");
}

const char* variant_name(Variant variant) {
  switch (variant) {
    case Variant::kBasicConvex:
      return "basic";
    case Variant::kAccelConvex:
      return "accel";
    case Variant::kBasicStrong:
      return "basic-strong";
    case Variant::kAccelStrong:
      return "accel-strong";
  }
  return "unknown";
}

}  // namespace iprox
