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

#include "iprox/problems.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace iprox {
namespace {

using RowMajorMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Matrix gaussian_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal;
  Matrix m(rows, cols);
  // Fill column by column so the draw order is fixed.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

// Orthonormal rows x cols factor (cols <= rows) from a seeded Gaussian draw.
Matrix orthonormal_columns(std::mt19937_64& rng, Index rows, Index cols) {
  const Matrix g = gaussian_matrix(rng, rows, cols);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  // Fix the sign ambiguity of QR so the factor is a function of the draw.
  const Matrix r = qr.matrixQR().topRows(cols).triangularView<Eigen::Upper>();
  for (Index j = 0; j < cols; ++j) {
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  }
  return q;
}

Vector flatten_row_major(const Matrix& m) {
  const RowMajorMatrix rm = m;
  return Eigen::Map<const Vector>(rm.data(), rm.size());
}

double parse_double(std::string_view token, std::size_t line) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) {
    token.remove_prefix(1);
  }
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' ||
                            token.back() == '\r')) {
    token.remove_suffix(1);
  }
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() ||
      token.empty()) {
    throw std::invalid_argument("CSV line " + std::to_string(line) +
                                ": not a real number: '" + std::string(token) +
                                "'");
  }
  return value;
}

}  // namespace

LassoInstance gen_lasso(std::uint64_t seed, Index n, Index d,
                        double condition_number,
                        std::optional<double> lambda) {
  if (n < 1 || d < 1) throw std::invalid_argument("gen_lasso: n, d >= 1");
  if (!(condition_number >= 1.0)) {
    throw std::invalid_argument("gen_lasso: condition number must be >= 1");
  }
  std::mt19937_64 rng(seed);
  const Index rank = std::min(n, d);
  const Matrix U = orthonormal_columns(rng, n, rank);
  const Matrix V = orthonormal_columns(rng, d, rank);
  Vector singular(rank);
  for (Index i = 0; i < rank; ++i) {
    const double t = rank == 1 ? 0.0 : static_cast<double>(i) / (rank - 1);
    singular[i] = std::sqrt(std::pow(condition_number, -t));
  }

  LassoInstance inst;
  inst.A = U * singular.asDiagonal() * V.transpose();
  inst.L_known = 1.0;
  inst.mu_known = d <= n ? 1.0 / condition_number : 0.0;

  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform;
  Vector x_sparse = Vector::Zero(d);
  for (Index i = 0; i < d; ++i) {
    const double draw = normal(rng);
    if (uniform(rng) < 0.2) x_sparse[i] = draw;
  }
  Vector noise(n);
  for (Index i = 0; i < n; ++i) noise[i] = 0.1 * normal(rng);
  inst.b = inst.A * x_sparse + noise;
  inst.lambda = lambda.value_or(
      0.1 * (inst.A.transpose() * inst.b).lpNorm<Eigen::Infinity>());
  if (!(inst.lambda >= 0.0)) {
    throw std::invalid_argument("gen_lasso: lambda must be nonnegative");
  }
  return inst;
}

RowColGroups CurInstance::groups() const {
  return RowColGroups{W.cols(), W.rows(), lambda_row, lambda_col};
}

CurInstance cur_from_matrix(Matrix W, double lambda_row, double lambda_col) {
  if (W.rows() < 1 || W.cols() < 1) {
    throw std::invalid_argument("CUR matrix must be nonempty");
  }
  if (!(lambda_row >= 0.0) || !(lambda_col >= 0.0)) {
    throw std::invalid_argument("CUR weights must be nonnegative");
  }
  CurInstance inst;
  inst.W = std::move(W);
  inst.lambda_row = lambda_row;
  inst.lambda_col = lambda_col;
  Eigen::JacobiSVD<Matrix> svd(inst.W);
  const Vector& s = svd.singularValues();
  inst.L_known = std::pow(s[0], 4);
  if (inst.W.rows() == inst.W.cols()) {
    inst.mu_known = std::pow(s[s.size() - 1], 4);
  }
  if (!(inst.L_known > 0.0)) {
    throw std::invalid_argument("CUR matrix must be nonzero");
  }
  return inst;
}

CurInstance gen_cur(std::uint64_t seed, Index n_rows, Index n_cols,
                    double lambda_row, double lambda_col) {
  if (n_rows < 1 || n_cols < 1) {
    throw std::invalid_argument("gen_cur: dimensions must be >= 1");
  }
  std::mt19937_64 rng(seed);
  // Scaled to sigma_max(W) = 1 so that L = 1 is the true Lipschitz constant.
  Matrix W = gaussian_matrix(rng, n_rows, n_cols);
  const double top = Eigen::JacobiSVD<Matrix>(W).singularValues()[0];
  return cur_from_matrix(W / top, lambda_row, lambda_col);
}

SmoothTerm least_squares_term(const Matrix& A, const Vector& b, double L,
                              double mu) {
  if (A.rows() != b.size()) {
    throw std::invalid_argument("least squares: A and b disagree");
  }
  SmoothTerm g;
  g.dimension = A.cols();
  g.lipschitz = L;
  g.strong_convexity = mu;
  g.value = [A, b](const Vector& x) {
    return 0.5 * (A * x - b).squaredNorm();
  };
  g.gradient = [A, b](const Vector& x) -> Vector {
    return A.transpose() * (A * x - b);
  };
  return g;
}

SmoothTerm quadratic_term(const Matrix& Q, const Vector& c) {
  if (Q.rows() != Q.cols() || Q.rows() != c.size()) {
    throw std::invalid_argument("quadratic: shapes disagree");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(Q, Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  SmoothTerm g;
  g.dimension = Q.rows();
  g.lipschitz = ev[ev.size() - 1];
  g.strong_convexity = std::max(ev[0], 0.0);
  g.value = [Q, c](const Vector& x) { return 0.5 * x.dot(Q * x) - c.dot(x); };
  g.gradient = [Q, c](const Vector& x) -> Vector { return Q * x - c; };
  return g;
}

SmoothTerm cur_smooth_term(const CurInstance& instance) {
  const Matrix W = instance.W;
  const Index x_rows = W.cols();
  const Index x_cols = W.rows();
  SmoothTerm g;
  g.dimension = instance.dimension();
  g.lipschitz = instance.L_known;
  g.strong_convexity = instance.mu_known;
  g.value = [W, x_rows, x_cols](const Vector& x) {
    const Eigen::Map<const RowMajorMatrix> X(x.data(), x_rows, x_cols);
    return 0.5 * (W - W * X * W).squaredNorm();
  };
  g.gradient = [W, x_rows, x_cols](const Vector& x) -> Vector {
    const Eigen::Map<const RowMajorMatrix> X(x.data(), x_rows, x_cols);
    const Matrix residual = W - W * X * W;
    return flatten_row_major(-W.transpose() * residual * W.transpose());
  };
  return g;
}

CompositeProblem lasso_problem(const LassoInstance& instance) {
  return make_problem(
      least_squares_term(instance.A, instance.b, instance.L_known,
                         instance.mu_known),
      with_controlled_error(l1_term(instance.A.cols(), instance.lambda)));
}

CompositeProblem cur_problem(const CurInstance& instance) {
  return make_problem(cur_smooth_term(instance),
                      row_col_term(instance.groups()));
}

ReferenceSolution solve_reference(const CompositeProblem& problem, double tol,
                                  const std::optional<Vector>& x0) {
  if (!(tol > 0.0)) throw std::invalid_argument("reference tol must be > 0");
  const double L = problem.g.lipschitz;
  const double mu = problem.g.strong_convexity;

  Vector x = x0.value_or(Vector::Zero(problem.dimension));
  if (x.size() != problem.dimension) {
    throw std::invalid_argument("reference x0 dimension mismatch");
  }
  double fx = evaluate_objective(problem, x);
  Vector y = x;
  std::int64_t momentum_index = 1;
  // Smallest mapping norm seen up to each accepted iteration.
  std::vector<double> best;
  std::int64_t last_improvement = 0;

  for (std::int64_t it = 1; it <= kReferenceIterationCap; ++it) {
    const Vector center = y - problem.g.gradient(y) / L;
    Vector x_new = problem.h.prox(center, L, ExactProx{}).point;
    const double f_new = evaluate_objective(problem, x_new);
    const bool restarted = momentum_index == 1;
    if (f_new > fx && !restarted) {
      y = x;
      momentum_index = 1;
      continue;
    }
    const double mapping = L * (y - x_new).norm();
    const double change = std::abs(fx - f_new);
    const double beta = static_cast<double>(momentum_index - 1) /
                        static_cast<double>(momentum_index + 2);
    y = x_new + beta * (x_new - x);
    x = std::move(x_new);
    fx = f_new;
    ++momentum_index;

    const auto n = static_cast<std::int64_t>(best.size());
    if (best.empty() || mapping < best.back()) last_improvement = n;
    best.push_back(best.empty() ? mapping : std::min(mapping, best.back()));
    if (mapping > tol ||
        change > std::max(tol * tol, 1e-15 * (1.0 + std::abs(fx)))) {
      continue;
    }

    // Distance to the minimizer: certified through mu when available,
    // otherwise extrapolated from the observed contraction of the mapping
    // norm, whose tail sums the remaining steps of size mapping / L.
    double dist = mu > 0.0 ? 2.0 * mapping / mu : kInfinity;
    if (n >= 2 * kContractionWindow) {
      const double then = best[static_cast<std::size_t>(n - kContractionWindow)];
      const double rate = std::pow(best.back() / then,
                                   1.0 / static_cast<double>(kContractionWindow));
      if (rate < 1.0) dist = std::min(dist, best.back() / (L * (1.0 - rate)));
    }
    // A mapping norm stuck at round-off level cannot certify anything better.
    const bool stalled = n - last_improvement >= 20 * kContractionWindow;
    if (dist <= tol || stalled) {
      return ReferenceSolution{x, fx, it, mapping};
    }
  }
  throw SolverError("reference solve exceeded the iteration cap");
}

Matrix load_csv_matrix(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open CSV file: " + path.string());
  }
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<double> row;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      row.push_back(parse_double(rest.substr(0, comma), line_no));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw std::invalid_argument("CSV line " + std::to_string(line_no) +
                                  ": expected " +
                                  std::to_string(rows.front().size()) +
                                  " columns, got " +
                                  std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("CSV file has no rows");
  Matrix m(static_cast<Index>(rows.size()),
           static_cast<Index>(rows.front().size()));
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return m;
}

}  // namespace iprox
