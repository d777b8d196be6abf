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

#include "iprox/bounds.hpp"

#include <cmath>
#include <random>
#include <vector>

#include "gtest/gtest.h"
#include "iprox/problems.hpp"
#include "iprox/solvers.hpp"
#include "oracles.hpp"

namespace iprox {
namespace {

BoundInputs zero_errors(double L, double mu, double dist0, double f0_gap,
                        std::size_t k) {
  return BoundInputs{L, mu, dist0, f0_gap, std::vector<double>(k, 0.0),
                     std::vector<double>(k, 0.0)};
}

std::vector<double> poly(std::size_t k, double scale, double exponent) {
  std::vector<double> v;
  for (std::size_t i = 1; i <= k; ++i) {
    v.push_back(scale / std::pow(static_cast<double>(i), exponent));
  }
  return v;
}

// Direct summation of the accelerated strongly convex bound in long double.
long double direct_prop4(const BoundInputs& in, std::size_t k) {
  const long double q = 1.0L - std::sqrt(static_cast<long double>(in.mu) /
                                         static_cast<long double>(in.L));
  long double a = 0.0L, b = 0.0L;
  for (std::size_t i = 1; i <= k; ++i) {
    const long double ii = static_cast<long double>(i);
    a += (in.e_norms[i - 1] + std::sqrt(2.0L * in.L * in.eps[i - 1])) *
         std::pow(q, -ii / 2.0L);
    b += in.eps[i - 1] * std::pow(q, -ii);
  }
  const long double inner = std::sqrt(2.0L * in.f0_gap) +
                            a * std::sqrt(2.0L / in.mu) + std::sqrt(b);
  return std::pow(q, static_cast<long double>(k)) * inner * inner;
}

TEST(BasicBoundTest, ZeroErrors) {
  const auto s = bound_prop1(zero_errors(1.0, 0.0, 1.0, 0.0, 10));
  EXPECT_DOUBLE_EQ(s.bound_value[9], 0.05);
  EXPECT_EQ(s.A[9], 0.0);
  EXPECT_EQ(s.B[9], 0.0);
}

TEST(BasicBoundTest, SummationExamples) {
  BoundInputs in = zero_errors(1.0, 0.0, 1.0, 0.0, 2);
  in.eps = poly(2, 1.0, 3.0);
  const auto s = bound_prop1(in);
  // Frozen from a 30-digit evaluation of the closed sums.
  EXPECT_NEAR(s.A[1], 1.91421356237309504880, 1e-15);
  EXPECT_NEAR(s.B[1], 1.125, 1e-15);
  EXPECT_NEAR(s.bound_value[1], 10.0122474683058326708, 1e-13);

  BoundInputs g = zero_errors(2.0, 0.0, 1.0, 0.0, 1);
  g.e_norms = poly(1, 1.0, 2.0);
  const auto t = bound_prop1(g);
  EXPECT_DOUBLE_EQ(t.A[0], 0.5);
  EXPECT_EQ(t.B[0], 0.0);
  EXPECT_DOUBLE_EQ(t.bound_value[0], 4.0);
}

TEST(AccelBoundTest, ZeroErrors) {
  EXPECT_DOUBLE_EQ(
      bound_prop2(zero_errors(1.0, 0.0, 1.0, 0.0, 1)).bound_value[0], 0.5);
  const auto s = bound_prop2(zero_errors(3.0, 0.0, 2.0, 0.0, 1000));
  for (std::size_t i = 0; i < 1000; ++i) {
    const double k1 = static_cast<double>(i + 2);
    EXPECT_NEAR(s.bound_value[i] * k1 * k1, 24.0, 1e-12);
  }
}

TEST(AccelBoundTest, SummationExample) {
  BoundInputs in = zero_errors(1.0, 0.0, 1.0, 0.0, 3);
  in.eps = poly(3, 1.0, 5.0);
  const auto s = bound_prop2(in);
  EXPECT_NEAR(s.A_tilde[2], 2.18637908934900372638, 1e-15);
  EXPECT_NEAR(s.B_tilde[2], 1.16203703703703703704, 1e-15);
  EXPECT_NEAR(s.bound_value[2], 5.94650649453167153288, 1e-13);
}

TEST(StrongBasicBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(
      bound_prop3(zero_errors(2.0, 1.0, 1.0, 0.0, 3)).bound_value[2], 0.125);
  const auto one = bound_prop3(zero_errors(1.0, 1.0, 1.0, 0.0, 5));
  for (double v : one.bound_value) EXPECT_EQ(v, 0.0);

  // ||e_i|| = (1 - gamma)^i L telescopes to A_bar_k = k.
  BoundInputs in = zero_errors(2.0, 0.2, 1.5, 0.0, 300);
  for (std::size_t i = 0; i < 300; ++i) {
    in.e_norms[i] = std::pow(0.9, static_cast<double>(i + 1)) * 2.0;
  }
  const auto s = bound_prop3(in);
  for (std::size_t i = 0; i < 300; ++i) {
    const double k = static_cast<double>(i + 1);
    EXPECT_NEAR(s.A_bar[i], k, 1e-9 * k);
    EXPECT_NEAR(s.bound_value[i], std::pow(0.9, k) * (1.5 + k),
                1e-12 * (1.5 + k));
  }
}

TEST(StrongAccelBoundTest, Examples) {
  EXPECT_DOUBLE_EQ(
      bound_prop4(zero_errors(1.0, 0.25, 0.0, 1.0, 2)).bound_value[1], 0.5);
  const auto one = bound_prop4(zero_errors(1.0, 1.0, 0.0, 3.0, 5));
  for (double v : one.bound_value) EXPECT_EQ(v, 0.0);

  BoundInputs in = zero_errors(1.0, 0.25, 0.0, 1.0, 400);
  for (std::size_t i = 0; i < 400; ++i) {
    in.eps[i] = std::pow(0.5, static_cast<double>(i + 1));
  }
  const auto s = bound_prop4(in);
  for (std::size_t i = 0; i < 400; ++i) {
    const double k = static_cast<double>(i + 1);
    EXPECT_NEAR(s.B_hat[i], k, 1e-9 * k);
  }
}

TEST(StrongAccelBoundTest, MatchesDirectSummation) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    BoundInputs in = zero_errors(1.0 + unif(rng), 0.0, 0.0, unif(rng), 40);
    in.mu = 0.05 + 0.9 * in.L * unif(rng);
    for (std::size_t i = 0; i < 40; ++i) {
      in.eps[i] = 1e-3 * unif(rng);
      in.e_norms[i] = 1e-2 * unif(rng);
    }
    const auto s = bound_prop4(in);
    for (std::size_t k : {1u, 7u, 40u}) {
      const double want = static_cast<double>(direct_prop4(in, k));
      EXPECT_NEAR(s.bound_value[k - 1], want, 1e-12 * (1.0 + want));
    }
  }
}

TEST(BoundsTest, LongHorizonsStayFinite) {
  BoundInputs in = zero_errors(1.0, 1e-4, 1.0, 1.0, 100000);
  for (std::size_t i = 0; i < in.length(); ++i) {
    in.eps[i] = 1e-8;
    in.e_norms[i] = 1e-6;
  }
  for (const auto& s : {bound_prop3(in), bound_prop4(in)}) {
    EXPECT_TRUE(std::isfinite(s.bound_value.back()));
    EXPECT_GT(s.bound_value.back(), 0.0);
  }
}

TEST(BoundsTest, NondecreasingInErrors) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> pick(0, 29);
  for (int trial = 0; trial < 100; ++trial) {
    BoundInputs in = zero_errors(2.0, 0.3, unif(rng), unif(rng), 30);
    for (std::size_t i = 0; i < 30; ++i) {
      in.eps[i] = 1e-2 * unif(rng);
      in.e_norms[i] = 1e-1 * unif(rng);
    }
    BoundInputs more = in;
    const std::size_t j = pick(rng);
    (trial % 2 ? more.eps[j] : more.e_norms[j]) += unif(rng);
    const std::vector<std::pair<BoundSeries, BoundSeries>> pairs = {
        {bound_prop1(in), bound_prop1(more)},
        {bound_prop2(in), bound_prop2(more)},
        {bound_prop3(in), bound_prop3(more)},
        {bound_prop4(in), bound_prop4(more)}};
    for (const auto& [base, bumped] : pairs) {
      for (std::size_t i = 0; i < 30; ++i) {
        EXPECT_GE(bumped.bound_value[i], base.bound_value[i]);
      }
    }
    const auto s = bound_prop1(in);
    for (std::size_t i = 1; i < 30; ++i) {
      EXPECT_GE(s.A[i], s.A[i - 1]);
      EXPECT_GE(s.B[i], s.B[i - 1]);
    }
  }
}

TEST(BoundsTest, InputErrors) {
  EXPECT_THROW(bound_prop1(BoundInputs{}), std::invalid_argument);
  BoundInputs bad = zero_errors(1.0, 0.0, 1.0, 0.0, 3);
  bad.e_norms.pop_back();
  EXPECT_THROW(bound_prop1(bad), std::invalid_argument);
  bad = zero_errors(1.0, 0.0, 1.0, 0.0, 3);
  bad.eps[1] = -1e-3;
  EXPECT_THROW(bound_prop2(bad), std::invalid_argument);
  EXPECT_THROW(bound_prop3(zero_errors(1.0, 0.0, 1.0, 0.0, 3)),
               std::invalid_argument);
  EXPECT_THROW(bound_prop4(zero_errors(1.0, 0.0, 1.0, 0.0, 3)),
               std::invalid_argument);
  EXPECT_THROW(bound_prop4(zero_errors(1.0, 2.0, 1.0, 0.0, 3)),
               std::invalid_argument);
}

TEST(RecursionBoundTest, Examples) {
  const std::vector<double> S = {1.0, 2.0, 4.0};
  const std::vector<double> zero = {0.0, 0.0, 0.0};
  EXPECT_DOUBLE_EQ(lemma1_bound(S, zero, 3), 2.0);
  const std::vector<double> one = {1.0};
  const std::vector<double> two = {2.0};
  EXPECT_DOUBLE_EQ(lemma1_bound(one, two, 1), 1.0 + std::sqrt(2.0));
  const std::vector<double> decreasing = {2.0, 1.0};
  EXPECT_THROW(lemma1_bound(decreasing, zero, 2), std::invalid_argument);
  EXPECT_THROW(lemma1_bound(S, zero, 4), std::invalid_argument);
}

TEST(RecursionBoundTest, DominatesSaturatingSequences) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::uniform_int_distribution<int> length(1, 50);
  for (int trial = 0; trial < 1000; ++trial) {
    const int k = length(rng);
    std::vector<double> S(k), lambda(k);
    double s = 0.0;
    for (int i = 0; i < k; ++i) {
      s += unif(rng) * unif(rng);
      S[i] = s;
      lambda[i] = 3.0 * unif(rng);
    }
    const auto u = oracle::saturating_sequence(S, lambda);
    for (int j = 1; j <= k; ++j) {
      EXPECT_LE(u[j - 1], lemma1_bound(S, lambda, j) * (1.0 + 1e-12));
    }
  }
}

TEST(FitRateTest, SyntheticTraces) {
  std::vector<double> harmonic, halving;
  for (int k = 1; k <= 200; ++k) {
    harmonic.push_back(1.0 / k);
    halving.push_back(std::pow(0.5, k));
  }
  EXPECT_NEAR(fit_rate_slope(harmonic, 10, 200, RateModel::kPowerLaw), -1.0,
              1e-9);
  EXPECT_NEAR(fit_rate_slope(halving, 10, 200, RateModel::kGeometric),
              std::log(0.5), 1e-9);
  halving[50] = 0.0;
  EXPECT_THROW(fit_rate_slope(halving, 10, 200, RateModel::kGeometric),
               std::invalid_argument);
  EXPECT_THROW(fit_rate_slope(harmonic, 20, 20, RateModel::kPowerLaw),
               std::invalid_argument);
  EXPECT_THROW(fit_rate_slope(harmonic, 10, 201, RateModel::kPowerLaw),
               std::invalid_argument);
}

TEST(FitRateTest, AcceleratedLassoSlope) {
  // Wide (d > n, so mu = 0) and far from round-off over the window.
  const auto inst = gen_lasso(42, 50, 200, 100.0);
  const auto problem = lasso_problem(inst);
  const auto ref = solve_reference(problem, 1e-12);
  SolverConfig c;
  c.variant = Variant::kAccelConvex;
  c.max_outer = 200;
  c.x0 = Vector::Zero(200);
  const auto r = run_solver(problem, c);
  EXPECT_LE(fit_rate_slope(r.trace, ref.f_star, TraceQuantity::kLastIterate,
                           10, 200, RateModel::kPowerLaw),
            -1.7);
}

TEST(BoundInputsTest, TakesRealizedErrorsFromTrace) {
  IterateTrace t;
  for (std::int64_t k = 1; k <= 3; ++k) {
    IterateRecord r;
    r.k = k;
    r.eps_used = 0.1 * static_cast<double>(k);
    r.eps_target = 1.0;
    r.grad_err_norm = 0.01 * static_cast<double>(k);
    t.append(r);
  }
  const auto in = bound_inputs_from_trace(t, 2.0, 0.5, 3.0, 4.0);
  EXPECT_EQ(in.L, 2.0);
  EXPECT_EQ(in.mu, 0.5);
  EXPECT_EQ(in.dist0, 3.0);
  EXPECT_EQ(in.f0_gap, 4.0);
  EXPECT_EQ(in.eps, t.eps_used());
  EXPECT_EQ(in.e_norms, t.grad_err_norms());
}

}  // namespace
}  // namespace iprox
