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

#ifndef IPROX_BOUNDS_HPP_
#define IPROX_BOUNDS_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "iprox/core.hpp"

namespace iprox {

// Realized quantities fed to the bound calculators. eps[i] and e_norms[i]
// belong to iteration i+1.
struct BoundInputs {
  double L = 1.0;
  double mu = 0.0;
  double dist0 = 0.0;   // ||x_0 - x*||
  double f0_gap = 0.0;  // f(x_0) - f(x*)
  std::vector<double> eps;
  std::vector<double> e_norms;

  // Throws std::invalid_argument on empty or mismatched sequences, negative
  // entries or L <= 0.
  void validate() const;
  std::size_t length() const { return eps.size(); }
};

// Cumulative error series; entry i corresponds to k = i+1. Only the series
// used by the requested bound are filled.
struct BoundSeries {
  std::vector<double> A, B;              // basic, convex
  std::vector<double> A_tilde, B_tilde;  // accelerated, convex
  std::vector<double> A_bar;             // basic, strongly convex
  std::vector<double> A_hat, B_hat;      // accelerated, strongly convex
  std::vector<double> bound_value;
};

// Bound on f(xbar_k) - f*, xbar_k the average of x_1..x_k:
//   (L/2k) (||x0 - x*|| + 2 A_k + sqrt(2 B_k))^2.
BoundSeries bound_prop1(const BoundInputs& inputs);

// Bound on f(x_k) - f* for momentum (k-1)/(k+2):
//   2L/(k+1)^2 (||x0 - x*|| + 2 A~_k + sqrt(2 B~_k))^2.
BoundSeries bound_prop2(const BoundInputs& inputs);

// Bound on ||x_k - x*|| for the basic method under strong convexity:
//   (1-gamma)^k (||x0 - x*|| + A-_k).
BoundSeries bound_prop3(const BoundInputs& inputs);

// Bound on f(x_k) - f* for constant momentum under strong convexity:
//   (1-sqrt(gamma))^k (sqrt(2(f(x0)-f*)) + A^_k sqrt(2/mu) + sqrt(B^_k))^2.
BoundSeries bound_prop4(const BoundInputs& inputs);

// Any nonnegative u with u_k^2 <= S_k + sum_{i<=k} lambda_i u_i satisfies
// u_k <= (1/2) sum lambda_i + sqrt(S_k + ((1/2) sum lambda_i)^2).
// S[i], lambda[i] hold S_{i+1}, lambda_{i+1}; k is 1-based.
double lemma1_bound(std::span<const double> S, std::span<const double> lambda,
                    std::int64_t k);

enum class RateModel {
  kPowerLaw,   // slope of log(f - f*) against log k
  kGeometric,  // slope of log(f - f*) against k
};

// Least-squares slope over k in [k_min, k_max]; suboptimality[i] belongs to
// k = i+1. Throws std::invalid_argument when a value in the window is not
// strictly positive.
double fit_rate_slope(std::span<const double> suboptimality,
                      std::int64_t k_min, std::int64_t k_max, RateModel model);

enum class TraceQuantity { kLastIterate, kAveragedIterate };

double fit_rate_slope(const IterateTrace& trace, double f_star,
                      TraceQuantity quantity, std::int64_t k_min,
                      std::int64_t k_max, RateModel model);

// Reads eps_used and grad_err_norm from a trace.
BoundInputs bound_inputs_from_trace(const IterateTrace& trace, double L,
                                    double mu, double dist0, double f0_gap);

}  // namespace iprox

#endif  // IPROX_BOUNDS_HPP_
