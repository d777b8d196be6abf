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

#include "iprox/core.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "iprox/problems.hpp"
#include "iprox/prox.hpp"
#include "oracles.hpp"

namespace iprox {
namespace {

CompositeProblem identity_lasso(const Vector& b, double lambda) {
  LassoInstance inst;
  inst.A = Matrix::Identity(b.size(), b.size());
  inst.b = b;
  inst.lambda = lambda;
  inst.L_known = 1.0;
  inst.mu_known = 1.0;
  return lasso_problem(inst);
}

TEST(EvaluateObjectiveTest, IdentityLassoAtZero) {
  EXPECT_DOUBLE_EQ(
      evaluate_objective(identity_lasso(Vector::Zero(2), 1.0), Vector::Zero(2)),
      0.0);
  EXPECT_DOUBLE_EQ(
      evaluate_objective(identity_lasso(Vector::Ones(2), 1.0), Vector::Zero(2)),
      1.0);
}

TEST(EvaluateObjectiveTest, MatchesDirectRecomputation) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const LassoInstance inst = gen_lasso(100 + trial, 15, 8, 5.0);
    const Vector x = oracle::random_vector(rng, 8);
    const double expected =
        oracle::lasso_objective(inst.A, inst.b, inst.lambda, x);
    EXPECT_NEAR(evaluate_objective(lasso_problem(inst), x), expected,
                1e-12 * (1.0 + std::abs(expected)));
  }
}

TEST(EvaluateObjectiveTest, DeterministicAndDimensionChecked) {
  const auto problem = lasso_problem(gen_lasso(3, 10, 5, 2.0));
  const Vector x = Vector::LinSpaced(5, -1.0, 1.0);
  EXPECT_EQ(evaluate_objective(problem, x), evaluate_objective(problem, x));
  EXPECT_THROW(evaluate_objective(problem, Vector::Zero(4)),
               std::invalid_argument);
}

TEST(EvaluateObjectiveTest, InfiniteNonsmoothValuePropagates) {
  // Indicator of the nonnegative orthant.
  NonsmoothTerm h;
  h.dimension = 2;
  h.value = [](const Vector& x) {
    return (x.array() >= 0.0).all() ? 0.0 : kInfinity;
  };
  h.prox = [](const Vector& y, double, const ProxTolerance&) {
    return ProxResult{y.cwiseMax(0.0), 0.0, 1};
  };
  const auto problem = make_problem(
      quadratic_term(Matrix::Identity(2, 2), Vector::Zero(2)), h);
  EXPECT_EQ(evaluate_objective(problem, Vector::Constant(2, -1.0)), kInfinity);
  EXPECT_GT(kInfinity, evaluate_objective(problem, Vector::Ones(2)));
}

TEST(ProximalObjectiveTest, Examples) {
  const Vector y = Vector::LinSpaced(3, 0.0, 2.0);
  EXPECT_DOUBLE_EQ(proximal_objective(zero_term(3), y, 5.0, y), 0.0);
  Vector y1(2);
  y1 << 1.0, 0.0;
  EXPECT_DOUBLE_EQ(proximal_objective(l1_term(2, 1.0), y1, 2.0, Vector::Zero(2)),
                   1.0);
  EXPECT_THROW(proximal_objective(zero_term(3), y, 0.0, y),
               std::invalid_argument);
  EXPECT_THROW(proximal_objective(zero_term(3), y, -1.0, y),
               std::invalid_argument);
}

TEST(ProximalObjectiveTest, MatchesRecomputation) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> unif(0.1, 5.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Vector y = oracle::random_vector(rng, 6);
    const Vector x = oracle::random_vector(rng, 6);
    const double L = unif(rng);
    const double lambda = unif(rng);
    double expected = 0.0;
    for (Index i = 0; i < 6; ++i) {
      expected += 0.5 * L * (x[i] - y[i]) * (x[i] - y[i]) + lambda * std::abs(x[i]);
    }
    EXPECT_NEAR(proximal_objective(l1_term(6, lambda), y, L, x), expected,
                1e-12 * (1.0 + expected));
  }
}

TEST(ErrorScheduleTest, MagnitudesAndTolerances) {
  ErrorSchedule s;
  s.prox = PolyDecay{1.0, 3.0};
  s.gradient = PolyDecay{1.0, 2.0};
  EXPECT_DOUBLE_EQ(s.gradient_error_norm(2), 0.25);
  EXPECT_DOUBLE_EQ(std::get<GapBelow>(s.prox_tolerance(2)).eps, 0.125);
  EXPECT_TRUE(s.gap_based());

  s.prox = FixedSweeps{3};
  EXPECT_EQ(std::get<Sweeps>(s.prox_tolerance(5)).count, 3);
  EXPECT_FALSE(s.gap_based());

  s.gradient = GeometricDecay{2.0, 0.5};
  EXPECT_DOUBLE_EQ(s.gradient_error_norm(3), 0.25);
  EXPECT_THROW(s.gradient_error_norm(0), std::invalid_argument);
}

TEST(ErrorScheduleTest, RejectsInvalidParameters) {
  ErrorSchedule s;
  s.prox = PolyDecay{1.0, 0.0};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.prox = ExactSolve{};
  s.gradient = GeometricDecay{1.0, 1.0};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.gradient = PolyDecay{-1.0, 2.0};
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.gradient = NoGradientError{};
  s.prox = ConstantTolerance{0.0};
  EXPECT_THROW(s.validate(), std::invalid_argument);
}

TEST(IterateTraceTest, CountersMustIncreaseFromOne) {
  IterateTrace trace;
  IterateRecord r;
  r.k = 2;
  EXPECT_THROW(trace.append(r), std::invalid_argument);
  r.k = 1;
  trace.append(r);
  EXPECT_THROW(trace.append(r), std::invalid_argument);
  r.k = 2;
  trace.append(r);
  EXPECT_EQ(trace.size(), 2u);
}

TEST(MakeProblemTest, RejectsMismatchedDimensions) {
  EXPECT_THROW(make_problem(quadratic_term(Matrix::Identity(3, 3),
                                           Vector::Zero(3)),
                            zero_term(2)),
               std::invalid_argument);
}

// g-invariants on 1000 sampled pairs for the generated instances.
TEST(SmoothTermInvariantTest, LipschitzAndStrongConvexityOnSamples) {
  const LassoInstance lasso = gen_lasso(5, 40, 20, 10.0);
  const CurInstance cur = gen_cur(5, 6, 5, 0.01, 0.01);
  for (const SmoothTerm& g : {lasso_problem(lasso).g, cur_smooth_term(cur)}) {
    std::mt19937_64 rng(99);
    ASSERT_LE(g.strong_convexity, g.lipschitz);
    for (int trial = 0; trial < 1000; ++trial) {
      const Vector x = oracle::random_vector(rng, g.dimension);
      const Vector y = oracle::random_vector(rng, g.dimension);
      const double dist = (x - y).norm();
      EXPECT_LE((g.gradient(x) - g.gradient(y)).norm(),
                g.lipschitz * dist * (1.0 + 1e-10));
      const double lower = g.value(x) + g.gradient(x).dot(y - x) +
                           0.5 * g.strong_convexity * dist * dist;
      EXPECT_GE(g.value(y), lower - 1e-10 * (1.0 + std::abs(lower)));
    }
  }
}

}  // namespace
}  // namespace iprox
