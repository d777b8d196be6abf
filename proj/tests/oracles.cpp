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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>

namespace iprox::oracle {

double lasso_objective(const Matrix& A, const Vector& b, double lambda,
                       const Vector& x) {
  double residual = 0.0;
  for (Index i = 0; i < A.rows(); ++i) {
    double r = -b[i];
    for (Index j = 0; j < A.cols(); ++j) r += A(i, j) * x[j];
    residual += r * r;
  }
  double l1 = 0.0;
  for (Index j = 0; j < x.size(); ++j) l1 += std::abs(x[j]);
  return 0.5 * residual + lambda * l1;
}

double grid_min_l1_prox_objective_2d(const Vector& y, double L, double lambda,
                                     double h) {
  const double radius = std::max(std::abs(y[0]), std::abs(y[1])) + h;
  const auto steps = static_cast<long>(std::ceil(radius / h));
  double best = std::numeric_limits<double>::infinity();
  for (long i = -steps; i <= steps; ++i) {
    const double a = static_cast<double>(i) * h;
    for (long j = -steps; j <= steps; ++j) {
      const double c = static_cast<double>(j) * h;
      const double value =
          0.5 * L * ((a - y[0]) * (a - y[0]) + (c - y[1]) * (c - y[1])) +
          lambda * (std::abs(a) + std::abs(c));
      best = std::min(best, value);
    }
  }
  return best;
}

double spectral_norm(const Matrix& M, int iterations) {
  Vector v = Vector::Ones(M.cols()) / std::sqrt(static_cast<double>(M.cols()));
  double estimate = 0.0;
  for (int it = 0; it < iterations; ++it) {
    Vector w = M.transpose() * (M * v);
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    estimate = norm;
    v = w / norm;
  }
  return std::sqrt(estimate);
}

std::vector<Vector> ista_iterates(const Matrix& A, const Vector& b,
                                  double lambda, double L, const Vector& x0,
                                  int iterations) {
  std::vector<Vector> out;
  Vector x = x0;
  const Index n = A.rows();
  const Index d = A.cols();
  for (int it = 0; it < iterations; ++it) {
    Vector residual(n);
    for (Index i = 0; i < n; ++i) {
      double r = -b[i];
      for (Index j = 0; j < d; ++j) r += A(i, j) * x[j];
      residual[i] = r;
    }
    Vector next(d);
    for (Index j = 0; j < d; ++j) {
      double g = 0.0;
      for (Index i = 0; i < n; ++i) g += A(i, j) * residual[i];
      const double z = x[j] - g / L;
      const double mag = std::abs(z) - lambda / L;
      next[j] = mag > 0.0 ? (z > 0.0 ? mag : -mag) : 0.0;
    }
    x = next;
    out.push_back(x);
  }
  return out;
}

Vector row_col_prox_dual(const Vector& y, double L, Index n_rows, Index n_cols,
                         double lambda_row, double lambda_col,
                         int iterations) {
  const Index d = n_rows * n_cols;
  const auto at = [n_cols](Index i, Index j) { return i * n_cols + j; };
  const auto project = [&](Vector& u, Vector& v) {
    for (Index i = 0; i < n_rows; ++i) {
      double sq = 0.0;
      for (Index j = 0; j < n_cols; ++j) sq += u[at(i, j)] * u[at(i, j)];
      const double norm = std::sqrt(sq);
      if (norm > lambda_row) {
        const double s = lambda_row == 0.0 ? 0.0 : lambda_row / norm;
        for (Index j = 0; j < n_cols; ++j) u[at(i, j)] *= s;
      }
    }
    for (Index j = 0; j < n_cols; ++j) {
      double sq = 0.0;
      for (Index i = 0; i < n_rows; ++i) sq += v[at(i, j)] * v[at(i, j)];
      const double norm = std::sqrt(sq);
      if (norm > lambda_col) {
        const double s = lambda_col == 0.0 ? 0.0 : lambda_col / norm;
        for (Index i = 0; i < n_rows; ++i) v[at(i, j)] *= s;
      }
    }
  };
  // Objective (1/2L)||Ly - u - v||^2 has gradient -(Ly - u - v)/L in both
  // blocks and Lipschitz constant 2/L.
  const double step = L / 2.0;
  Vector u = Vector::Zero(d), v = Vector::Zero(d);
  Vector u_prev = u, v_prev = v;
  Vector yu = u, yv = v;
  for (int it = 1; it <= iterations; ++it) {
    const Vector residual = (L * y - yu - yv) / L;
    Vector un = yu + step * residual;
    Vector vn = yv + step * residual;
    project(un, vn);
    const double beta = static_cast<double>(it - 1) / (it + 2);
    yu = un + beta * (un - u_prev);
    yv = vn + beta * (vn - v_prev);
    u_prev = un;
    v_prev = vn;
    u = un;
    v = vn;
  }
  return y - (u + v) / L;
}

double row_col_value(const Vector& x, Index n_rows, Index n_cols,
                     double lambda_row, double lambda_col) {
  double total = 0.0;
  for (Index i = 0; i < n_rows; ++i) {
    double sq = 0.0;
    for (Index j = 0; j < n_cols; ++j) sq += x[i * n_cols + j] * x[i * n_cols + j];
    total += lambda_row * std::sqrt(sq);
  }
  for (Index j = 0; j < n_cols; ++j) {
    double sq = 0.0;
    for (Index i = 0; i < n_rows; ++i) sq += x[i * n_cols + j] * x[i * n_cols + j];
    total += lambda_col * std::sqrt(sq);
  }
  return total;
}

double directional_derivative(const std::function<double(const Vector&)>& f,
                              const Vector& x, const Vector& v, double h) {
  return (f(x + h * v) - f(x - h * v)) / (2.0 * h);
}

std::vector<double> saturating_sequence(const std::vector<double>& S,
                                        const std::vector<double>& lambda) {
  std::vector<double> u;
  double weighted = 0.0;  // sum_{i<k} lambda_i u_i
  for (std::size_t k = 0; k < S.size(); ++k) {
    // u^2 - lambda_k u - (S_k + weighted) = 0
    const double c = S[k] + weighted;
    const double root =
        0.5 * (lambda[k] + std::sqrt(lambda[k] * lambda[k] + 4.0 * c));
    u.push_back(root);
    weighted += lambda[k] * root;
  }
  return u;
}

Vector random_vector(std::mt19937_64& rng, Index n, double scale) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Index i = 0; i < n; ++i) v[i] = scale * normal(rng);
  return v;
}

}  // namespace iprox::oracle
