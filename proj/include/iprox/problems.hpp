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

#ifndef IPROX_PROBLEMS_HPP_
#define IPROX_PROBLEMS_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>

#include "iprox/core.hpp"
#include "iprox/prox.hpp"

namespace iprox {

// 1/2 ||Ax - b||^2 + lambda ||x||_1.
struct LassoInstance {
  Matrix A;
  Vector b;
  double lambda = 0.0;
  // Smallest eigenvalue of A^T A (0 unless d <= n).
  double mu_known = 0.0;
  // Largest eigenvalue of A^T A.
  double L_known = 1.0;
};

// A = U diag(s) V^T with seeded orthonormal factors; the nonzero eigenvalues
// of A^T A are spaced geometrically from 1 down to 1/condition_number, so
// L_known = 1 and L/mu = condition_number when d <= n. b = A x_sparse + noise.
// lambda defaults to 0.1 ||A^T b||_inf.
LassoInstance gen_lasso(std::uint64_t seed, Index n, Index d,
                        double condition_number,
                        std::optional<double> lambda = std::nullopt);

// 1/2 ||W - W X W||_F^2 + lambda_row sum ||X^i|| + lambda_col sum ||X_j||,
// with X of shape W.cols() x W.rows() stored row-major.
struct CurInstance {
  Matrix W;
  double lambda_row = 0.0;
  double lambda_col = 0.0;
  // sigma_max(W)^4 and, for square full-rank W, sigma_min(W)^4.
  double L_known = 1.0;
  double mu_known = 0.0;

  RowColGroups groups() const;
  Index dimension() const { return W.rows() * W.cols(); }
};

// Gaussian W scaled by 1/(sqrt(n_r) + sqrt(n_c)), which puts sigma_max(W)
// near 1.
CurInstance gen_cur(std::uint64_t seed, Index n_rows, Index n_cols,
                    double lambda_row, double lambda_col);

// CurInstance around a user-supplied matrix.
CurInstance cur_from_matrix(Matrix W, double lambda_row, double lambda_col);

// 1/2 ||Ax - b||^2.
SmoothTerm least_squares_term(const Matrix& A, const Vector& b, double L,
                              double mu);
// 1/2 x^T Q x - c^T x with Q symmetric PSD; L and mu from its spectrum.
SmoothTerm quadratic_term(const Matrix& Q, const Vector& c);
SmoothTerm cur_smooth_term(const CurInstance& instance);

// The l1 prox is wrapped with with_controlled_error so that gap-based
// schedules inject prox errors of the requested size.
CompositeProblem lasso_problem(const LassoInstance& instance);
CompositeProblem cur_problem(const CurInstance& instance);

struct ReferenceSolution {
  Vector x_star;
  double f_star = 0.0;
  std::int64_t iterations = 0;
  // L ||y - prox(y - grad g(y)/L)|| at the last step.
  double mapping_norm = 0.0;
};

inline constexpr std::int64_t kReferenceIterationCap = 1'000'000;
// Iterations over which the mapping-norm contraction rate is measured.
inline constexpr std::int64_t kContractionWindow = 50;

// Accelerated proximal gradient with exact prox (gap 1e-13 for the BCD
// operator) and objective-increase restarts, using the problem's own L.
// Stops once the gradient-mapping norm is below tol, f has settled, and the
// estimated distance to x* (2 ||G|| / mu, or the geometric tail of the
// observed contraction) is below tol; or once the mapping norm has stopped
// improving at round-off level. Throws SolverError past
// kReferenceIterationCap.
ReferenceSolution solve_reference(const CompositeProblem& problem, double tol,
                                  const std::optional<Vector>& x0 = {});

// Plain CSV of reals, one matrix row per line. Blank lines are skipped.
Matrix load_csv_matrix(const std::filesystem::path& path);

}  // namespace iprox

#endif  // IPROX_PROBLEMS_HPP_
