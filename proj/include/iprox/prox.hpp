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

#ifndef IPROX_PROX_HPP_
#define IPROX_PROX_HPP_

#include <cstdint>
#include <vector>

#include "iprox/core.hpp"

namespace iprox {

// Soft threshold: argmin_x (L/2)||x - y||^2 + lambda ||x||_1.
Vector prox_l1(const Vector& center, double L, double lambda);

// Weighted groups over {0..d-1}; h(x) = sum_g w_g ||x_g||_2.
struct GroupStructure {
  std::vector<std::vector<Index>> groups;
  std::vector<double> weights;

  // Throws std::invalid_argument on out-of-range indices, empty groups,
  // nonpositive weights, or (when `require_disjoint`) shared indices.
  void validate(Index dimension, bool require_disjoint) const;
  double value(const Vector& x) const;
};

// Block soft threshold for disjoint groups. Indices not covered by any group
// pass through unchanged.
Vector prox_group_l2(const Vector& center, double L,
                     const GroupStructure& groups);

// Row/column group-l2 penalty on an n_rows x n_cols matrix stored flat in
// row-major order:
//   h(X) = lambda_row sum_i ||X^i||_2 + lambda_col sum_j ||X_j||_2.
struct RowColGroups {
  Index n_rows = 0;
  Index n_cols = 0;
  double lambda_row = 0.0;
  double lambda_col = 0.0;

  Index dimension() const { return n_rows * n_cols; }
  void validate() const;
  double value(const Vector& x) const;
};

// Exact prox of the row part alone (scaled by 1/L).
Vector prox_rows(const Vector& center, double L, const RowColGroups& rc);
// Exact prox of the column part alone (scaled by 1/L).
Vector prox_cols(const Vector& center, double L, const RowColGroups& rc);

// Iterate of the two-block proximal Dykstra method. After every full sweep
// z == center - (p_row + p_col).
struct DykstraState {
  Vector z;
  Vector p_row;
  Vector p_col;
  std::int64_t sweep = 0;
};

// Fenchel duality gap of the row/column prox problem at primal point z, with
// dual candidates L*p_row and L*p_col projected onto their group balls.
// Tiny negative values (> -1e-14) are clamped to 0; anything lower raises
// InternalError.
double duality_gap(const Vector& center, double L, const RowColGroups& rc,
                   const Vector& z, const Vector& p_row, const Vector& p_col);

inline constexpr std::int64_t kMaxBcdSweeps = 1'000'000;
inline constexpr double kNegativeGapTolerance = 1e-14;
// Gap target used when an exact prox is requested from the BCD solver.
inline constexpr double kExactBcdGap = 1e-13;

// Two-block proximal Dykstra (row pass, then column pass) for
// argmin_x (L/2)||x - y||^2 + h_row(x) + h_col(x).
class DykstraBcd {
 public:
  DykstraBcd(Vector center, double L, RowColGroups rc);

  // One full sweep: row prox then column prox, each with its correction.
  void sweep();
  double gap() const;

  const DykstraState& state() const { return state_; }
  const Vector& center() const { return center_; }

 private:
  Vector center_;
  double L_;
  RowColGroups rc_;
  DykstraState state_;
};

// GapBelow(eps): sweeps until the duality gap (checked once per sweep, and
// once before the first) is <= eps. Sweeps(n): exactly n sweeps. ExactProx is
// treated as GapBelow(kExactBcdGap). Throws SolverError after kMaxBcdSweeps.
ProxResult prox_overlap_bcd(const Vector& center, double L,
                            const RowColGroups& rc,
                            const ProxTolerance& stop);

// NonsmoothTerm factories. Closed-form operators report certified_gap 0 and
// one inner iteration regardless of the requested tolerance.
NonsmoothTerm zero_term(Index dimension);
NonsmoothTerm l1_term(Index dimension, double lambda);
NonsmoothTerm group_l2_term(Index dimension, GroupStructure groups);
NonsmoothTerm row_col_term(const RowColGroups& rc);

// Wraps a term whose prox is exact and turns GapBelow(eps) requests into a
// deliberately inexact answer: the exact point is moved toward the prox
// center until its proximal-objective suboptimality is at most eps. The
// reported gap is that suboptimality, measured against the exact point.
NonsmoothTerm with_controlled_error(NonsmoothTerm exact);

}  // namespace iprox

#endif  // IPROX_PROX_HPP_
