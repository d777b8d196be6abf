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
#include <string>
#include <type_traits>

#include "overloaded.hpp"

namespace iprox {
namespace {

using internal::Overloaded;

void check_dimension(const Vector& x, Index expected, const char* what) {
  if (x.size() != expected) {
    throw std::invalid_argument(std::string(what) + ": expected dimension " +
                                std::to_string(expected) + ", got " +
                                std::to_string(x.size()));
  }
}

void validate_poly(const PolyDecay& p, const char* what) {
  if (!(p.scale >= 0.0) || !std::isfinite(p.scale)) {
    throw std::invalid_argument(std::string(what) +
                                ": scale must be finite and nonnegative");
  }
  if (!(p.exponent > 0.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": exponent must be positive");
  }
}

void validate_geometric(const GeometricDecay& g, const char* what) {
  if (!(g.scale >= 0.0) || !std::isfinite(g.scale)) {
    throw std::invalid_argument(std::string(what) +
                                ": scale must be finite and nonnegative");
  }
  if (!(g.ratio > 0.0 && g.ratio < 1.0)) {
    throw std::invalid_argument(std::string(what) +
                                ": ratio must lie in (0, 1)");
  }
}

double poly_value(const PolyDecay& p, std::int64_t k) {
  return p.scale / std::pow(static_cast<double>(k), p.exponent);
}

double geometric_value(const GeometricDecay& g, std::int64_t k) {
  return g.scale * std::pow(g.ratio, static_cast<double>(k));
}

}  // namespace

CompositeProblem make_problem(SmoothTerm g, NonsmoothTerm h) {
  if (!g.value || !g.gradient) {
    throw std::invalid_argument("smooth term is missing value or gradient");
  }
  if (!h.value || !h.prox) {
    throw std::invalid_argument("nonsmooth term is missing value or prox");
  }
  if (g.dimension <= 0 || g.dimension != h.dimension) {
    throw std::invalid_argument("smooth and nonsmooth dimensions disagree");
  }
  if (!(g.lipschitz > 0.0)) {
    throw std::invalid_argument("Lipschitz constant must be positive");
  }
  if (!(g.strong_convexity >= 0.0) || g.strong_convexity > g.lipschitz) {
    throw std::invalid_argument("strong convexity must lie in [0, L]");
  }
  const Index d = g.dimension;
  return CompositeProblem{std::move(g), std::move(h), d};
}

double evaluate_objective(const CompositeProblem& problem, const Vector& x) {
  check_dimension(x, problem.dimension, "evaluate_objective");
  const double hx = problem.h.value(x);
  if (hx == kInfinity) return kInfinity;
  return problem.g.value(x) + hx;
}

double proximal_objective(const NonsmoothTerm& h, const Vector& center,
                          double L, const Vector& x) {
  if (!(L > 0.0)) {
    throw std::invalid_argument("proximal_objective: L must be positive");
  }
  check_dimension(center, h.dimension, "proximal_objective (center)");
  check_dimension(x, h.dimension, "proximal_objective (point)");
  const double hx = h.value(x);
  if (hx == kInfinity) return kInfinity;
  return 0.5 * L * (x - center).squaredNorm() + hx;
}

void ErrorSchedule::validate() const {
  std::visit(Overloaded{
                 [](const ExactSolve&) {},
                 [](const PolyDecay& p) { validate_poly(p, "prox schedule"); },
                 [](const GeometricDecay& g) {
                   validate_geometric(g, "prox schedule");
                 },
                 [](const ConstantTolerance& c) {
                   if (!(c.eps > 0.0)) {
                     throw std::invalid_argument(
                         "constant prox tolerance must be positive");
                   }
                 },
                 [](const FixedSweeps& f) {
                   if (f.sweeps < 1) {
                     throw std::invalid_argument(
                         "fixed sweep count must be at least 1");
                   }
                 },
             },
             prox);
  std::visit(Overloaded{
                 [](const NoGradientError&) {},
                 [](const PolyDecay& p) {
                   validate_poly(p, "gradient error schedule");
                 },
                 [](const GeometricDecay& g) {
                   validate_geometric(g, "gradient error schedule");
                 },
             },
             gradient);
}

ProxTolerance ErrorSchedule::prox_tolerance(std::int64_t k) const {
  if (k < 1) throw std::invalid_argument("iteration counter starts at 1");
  return std::visit(
      Overloaded{
          [](const ExactSolve&) -> ProxTolerance { return ExactProx{}; },
          [k](const PolyDecay& p) -> ProxTolerance {
            return GapBelow{poly_value(p, k)};
          },
          [k](const GeometricDecay& g) -> ProxTolerance {
            return GapBelow{geometric_value(g, k)};
          },
          [](const ConstantTolerance& c) -> ProxTolerance {
            return GapBelow{c.eps};
          },
          [](const FixedSweeps& f) -> ProxTolerance {
            return Sweeps{f.sweeps};
          },
      },
      prox);
}

double ErrorSchedule::gradient_error_norm(std::int64_t k) const {
  if (k < 1) throw std::invalid_argument("iteration counter starts at 1");
  return std::visit(
      Overloaded{
          [](const NoGradientError&) { return 0.0; },
          [k](const PolyDecay& p) { return poly_value(p, k); },
          [k](const GeometricDecay& g) { return geometric_value(g, k); },
      },
      gradient);
}

bool ErrorSchedule::gap_based() const {
  return std::holds_alternative<PolyDecay>(prox) ||
         std::holds_alternative<GeometricDecay>(prox) ||
         std::holds_alternative<ConstantTolerance>(prox);
}

void IterateTrace::append(const IterateRecord& record) {
  const std::int64_t expected_min = records_.empty() ? 1 : records_.back().k + 1;
  if (records_.empty() ? record.k != 1 : record.k < expected_min) {
    throw std::invalid_argument("trace iteration counters must increase from 1");
  }
  records_.push_back(record);
}

std::vector<double> IterateTrace::eps_used() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.eps_used);
  return out;
}

std::vector<double> IterateTrace::grad_err_norms() const {
  std::vector<double> out;
  out.reserve(records_.size());
  for (const auto& r : records_) out.push_back(r.grad_err_norm);
  return out;
}

}  // namespace iprox
