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

#include "iprox/prox.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "overloaded.hpp"

namespace iprox {
namespace {

using RowMajorMap =
    Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                             Eigen::RowMajor>>;
using ConstRowMajorMap =
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                   Eigen::RowMajor>>;

void require_positive_scale(double L, const char* what) {
  if (!(L > 0.0) || !std::isfinite(L)) {
    throw std::invalid_argument(std::string(what) +
                                ": L must be positive and finite");
  }
}

// Multiplier max(1 - threshold / norm, 0); 0 for a zero-norm block.
double shrink_factor(double norm, double threshold) {
  if (norm <= threshold || norm == 0.0) return 0.0;
  return 1.0 - threshold / norm;
}

// Projects each row (or column) view onto the l2 ball of `radius`.
template <class Blocks>
void project_blocks(Blocks blocks, double radius) {
  for (auto block : blocks) {
    const double norm = block.norm();
    if (radius == 0.0) {
      block.setZero();
    } else if (norm > radius) {
      block *= radius / norm;
    }
  }
}

// sum over blocks of radius*||x_b|| - <x_b, u_b>; each term is >= 0 when u_b
// lies in the ball of that radius.
double support_slack_rows(const ConstRowMajorMap& x, const ConstRowMajorMap& u,
                          double radius) {
  double total = 0.0;
  for (Index i = 0; i < x.rows(); ++i) {
    total += radius * x.row(i).norm() - x.row(i).dot(u.row(i));
  }
  return total;
}

double support_slack_cols(const ConstRowMajorMap& x, const ConstRowMajorMap& u,
                          double radius) {
  double total = 0.0;
  for (Index j = 0; j < x.cols(); ++j) {
    total += radius * x.col(j).norm() - x.col(j).dot(u.col(j));
  }
  return total;
}

void check_rc_dimension(const Vector& v, const RowColGroups& rc,
                        const char* what) {
  if (v.size() != rc.dimension()) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(rc.dimension()) + ", got " +
                                std::to_string(v.size()));
  }
}

}  // namespace

Vector prox_l1(const Vector& center, double L, double lambda) {
  require_positive_scale(L, "prox_l1");
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("prox_l1: lambda must be nonnegative");
  }
  const double t = lambda / L;
  Vector out(center.size());
  for (Index i = 0; i < center.size(); ++i) {
    const double a = std::abs(center[i]) - t;
    out[i] = a > 0.0 ? std::copysign(a, center[i]) : 0.0;
  }
  return out;
}

void GroupStructure::validate(Index dimension, bool require_disjoint) const {
  if (groups.size() != weights.size()) {
    throw std::invalid_argument("group count and weight count differ");
  }
  std::vector<char> seen(static_cast<std::size_t>(dimension), 0);
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (!(weights[g] > 0.0)) {
      throw std::invalid_argument("group weights must be positive");
    }
    if (groups[g].empty()) throw std::invalid_argument("empty group");
    for (Index idx : groups[g]) {
      if (idx < 0 || idx >= dimension) {
        throw std::invalid_argument("group index out of range");
      }
      auto& mark = seen[static_cast<std::size_t>(idx)];
      if (mark && require_disjoint) {
        throw std::invalid_argument(
            "groups overlap; use the row/column BCD operator instead");
      }
      mark = 1;
    }
  }
}

double GroupStructure::value(const Vector& x) const {
  double total = 0.0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    double sq = 0.0;
    for (Index idx : groups[g]) sq += x[idx] * x[idx];
    total += weights[g] * std::sqrt(sq);
  }
  return total;
}

Vector prox_group_l2(const Vector& center, double L,
                     const GroupStructure& groups) {
  require_positive_scale(L, "prox_group_l2");
  groups.validate(center.size(), /*require_disjoint=*/true);
  Vector out = center;
  for (std::size_t g = 0; g < groups.groups.size(); ++g) {
    double sq = 0.0;
    for (Index idx : groups.groups[g]) sq += center[idx] * center[idx];
    const double factor = shrink_factor(std::sqrt(sq), groups.weights[g] / L);
    for (Index idx : groups.groups[g]) out[idx] = factor * center[idx];
  }
  return out;
}

void RowColGroups::validate() const {
  if (n_rows < 1 || n_cols < 1) {
    throw std::invalid_argument("row/column groups need positive dimensions");
  }
  if (!(lambda_row >= 0.0) || !(lambda_col >= 0.0)) {
    throw std::invalid_argument("row/column weights must be nonnegative");
  }
}

double RowColGroups::value(const Vector& x) const {
  ConstRowMajorMap m(x.data(), n_rows, n_cols);
  double total = 0.0;
  if (lambda_row > 0.0) total += lambda_row * m.rowwise().norm().sum();
  if (lambda_col > 0.0) total += lambda_col * m.colwise().norm().sum();
  return total;
}

Vector prox_rows(const Vector& center, double L, const RowColGroups& rc) {
  Vector out = center;
  RowMajorMap m(out.data(), rc.n_rows, rc.n_cols);
  const double t = rc.lambda_row / L;
  if (t == 0.0) return out;
  for (Index i = 0; i < rc.n_rows; ++i) {
    m.row(i) *= shrink_factor(m.row(i).norm(), t);
  }
  return out;
}

Vector prox_cols(const Vector& center, double L, const RowColGroups& rc) {
  Vector out = center;
  RowMajorMap m(out.data(), rc.n_rows, rc.n_cols);
  const double t = rc.lambda_col / L;
  if (t == 0.0) return out;
  for (Index j = 0; j < rc.n_cols; ++j) {
    m.col(j) *= shrink_factor(m.col(j).norm(), t);
  }
  return out;
}

double duality_gap(const Vector& center, double L, const RowColGroups& rc,
                   const Vector& z, const Vector& p_row, const Vector& p_col) {
  require_positive_scale(L, "duality_gap");
  rc.validate();
  check_rc_dimension(center, rc, "duality_gap (center)");
  check_rc_dimension(z, rc, "duality_gap (z)");
  check_rc_dimension(p_row, rc, "duality_gap (p_row)");
  check_rc_dimension(p_col, rc, "duality_gap (p_col)");

  Vector u = L * p_row;
  Vector v = L * p_col;
  {
    RowMajorMap um(u.data(), rc.n_rows, rc.n_cols);
    project_blocks(um.rowwise(), rc.lambda_row);
    RowMajorMap vm(v.data(), rc.n_rows, rc.n_cols);
    project_blocks(vm.colwise(), rc.lambda_col);
  }

  // P(z) - D(u, v) with D(u, v) = <y, u+v> - ||u+v||^2 / (2L), rearranged as
  // (L/2)||z - y + (u+v)/L||^2 + [h_row(z) - <z,u>] + [h_col(z) - <z,v>]
  // so that every term is nonnegative up to rounding.
  const Vector dual_point = center - (u + v) / L;
  double gap = 0.5 * L * (z - dual_point).squaredNorm();
  ConstRowMajorMap zm(z.data(), rc.n_rows, rc.n_cols);
  ConstRowMajorMap um(u.data(), rc.n_rows, rc.n_cols);
  ConstRowMajorMap vm(v.data(), rc.n_rows, rc.n_cols);
  gap += support_slack_rows(zm, um, rc.lambda_row);
  gap += support_slack_cols(zm, vm, rc.lambda_col);

  if (gap < 0.0) {
    if (gap < -kNegativeGapTolerance) {
      throw InternalError("duality gap is negative: " + std::to_string(gap));
    }
    gap = 0.0;
  }
  return gap;
}

DykstraBcd::DykstraBcd(Vector center, double L, RowColGroups rc)
    : center_(std::move(center)), L_(L), rc_(rc) {
  require_positive_scale(L_, "prox_overlap_bcd");
  rc_.validate();
  check_rc_dimension(center_, rc_, "prox_overlap_bcd");
  state_.z = center_;
  state_.p_row = Vector::Zero(center_.size());
  state_.p_col = Vector::Zero(center_.size());
}

void DykstraBcd::sweep() {
  const Vector row_in = state_.z + state_.p_row;
  const Vector row_out = prox_rows(row_in, L_, rc_);
  state_.p_row = row_in - row_out;

  const Vector col_in = row_out + state_.p_col;
  state_.z = prox_cols(col_in, L_, rc_);
  state_.p_col = col_in - state_.z;
  ++state_.sweep;
}

double DykstraBcd::gap() const {
  return duality_gap(center_, L_, rc_, state_.z, state_.p_row, state_.p_col);
}

ProxResult prox_overlap_bcd(const Vector& center, double L,
                            const RowColGroups& rc,
                            const ProxTolerance& stop) {
  DykstraBcd solver(center, L, rc);
  const auto finish = [&solver](double gap) {
    return ProxResult{solver.state().z, gap, solver.state().sweep};
  };

  if (const auto* sweeps = std::get_if<Sweeps>(&stop)) {
    if (sweeps->count < 0) {
      throw std::invalid_argument("sweep count must be nonnegative");
    }
    if (sweeps->count > kMaxBcdSweeps) {
      throw SolverError("requested sweep count exceeds the BCD sweep cap");
    }
    for (std::int64_t s = 0; s < sweeps->count; ++s) solver.sweep();
    return finish(solver.gap());
  }

  double target = kExactBcdGap;
  if (const auto* gap_stop = std::get_if<GapBelow>(&stop)) {
    if (!(gap_stop->eps > 0.0)) {
      throw std::invalid_argument("gap target must be positive");
    }
    target = gap_stop->eps;
  }

  double gap = solver.gap();
  while (gap > target) {
    if (solver.state().sweep >= kMaxBcdSweeps) {
      throw SolverError("BCD prox did not reach gap " + std::to_string(target) +
                        " within the sweep cap; last gap " +
                        std::to_string(gap));
    }
    solver.sweep();
    gap = solver.gap();
  }
  return finish(gap);
}

NonsmoothTerm zero_term(Index dimension) {
  NonsmoothTerm term;
  term.dimension = dimension;
  term.value = [](const Vector&) { return 0.0; };
  term.prox = [](const Vector& center, double L, const ProxTolerance&) {
    require_positive_scale(L, "zero prox");
    return ProxResult{center, 0.0, 1};
  };
  return term;
}

NonsmoothTerm l1_term(Index dimension, double lambda) {
  if (!(lambda >= 0.0)) {
    throw std::invalid_argument("l1 weight must be nonnegative");
  }
  NonsmoothTerm term;
  term.dimension = dimension;
  term.value = [lambda](const Vector& x) { return lambda * x.lpNorm<1>(); };
  term.prox = [lambda](const Vector& center, double L, const ProxTolerance&) {
    return ProxResult{prox_l1(center, L, lambda), 0.0, 1};
  };
  return term;
}

NonsmoothTerm group_l2_term(Index dimension, GroupStructure groups) {
  groups.validate(dimension, /*require_disjoint=*/true);
  NonsmoothTerm term;
  term.dimension = dimension;
  term.value = [groups](const Vector& x) { return groups.value(x); };
  term.prox = [groups](const Vector& center, double L, const ProxTolerance&) {
    return ProxResult{prox_group_l2(center, L, groups), 0.0, 1};
  };
  return term;
}

NonsmoothTerm row_col_term(const RowColGroups& rc) {
  rc.validate();
  NonsmoothTerm term;
  term.dimension = rc.dimension();
  term.value = [rc](const Vector& x) { return rc.value(x); };
  term.prox = [rc](const Vector& center, double L,
                   const ProxTolerance& tolerance) {
    return prox_overlap_bcd(center, L, rc, tolerance);
  };
  return term;
}

NonsmoothTerm with_controlled_error(NonsmoothTerm exact) {
  NonsmoothTerm term;
  term.dimension = exact.dimension;
  term.value = exact.value;
  term.prox = [exact = std::move(exact)](const Vector& center, double L,
                                         const ProxTolerance& tolerance) {
    ProxResult best = exact.prox(center, L, ExactProx{});
    const auto* gap_stop = std::get_if<GapBelow>(&tolerance);
    if (gap_stop == nullptr) return best;
    if (!(gap_stop->eps > 0.0)) {
      throw std::invalid_argument("gap target must be positive");
    }

    const Vector offset = center - best.point;
    const double reach = offset.norm();
    if (reach == 0.0) return best;
    const Vector direction = offset / reach;
    const double optimum = proximal_objective(exact, center, L, best.point);

    // Quadratic growth alone would give eps at distance sqrt(2 eps / L); the
    // nonsmooth part can only add, so back off until the target is met.
    double step = std::min(reach, std::sqrt(2.0 * gap_stop->eps / L));
    for (int attempt = 0; attempt < 200; ++attempt, step *= 0.5) {
      Vector candidate = best.point + step * direction;
      const double excess =
          proximal_objective(exact, center, L, candidate) - optimum;
      if (excess <= gap_stop->eps) {
        return ProxResult{std::move(candidate), std::max(excess, 0.0),
                          best.inner_iterations};
      }
    }
    return best;
  };
  return term;
}

}  // namespace iprox
