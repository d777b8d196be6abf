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
#include <string>

namespace iprox {
namespace {

// ||e_i||/L + sqrt(2 eps_i / L).
double basic_term(const BoundInputs& in, std::size_t i) {
  return in.e_norms[i] / in.L + std::sqrt(2.0 * in.eps[i] / in.L);
}

double strong_gamma(const BoundInputs& in) {
  if (!(in.mu > 0.0)) {
    throw std::invalid_argument(
        "strongly convex bounds need mu > 0; use the convex bounds instead");
  }
  if (in.mu > in.L) throw std::invalid_argument("mu must not exceed L");
  return in.mu / in.L;
}

// term * base^{-power} evaluated in log space; 0 when term is 0.
double inflate(double term, double log_base, double power) {
  if (term == 0.0) return 0.0;
  return std::exp(std::log(term) - power * log_base);
}

}  // namespace

void BoundInputs::validate() const {
  if (!(L > 0.0)) throw std::invalid_argument("bound inputs: L must be > 0");
  if (!(mu >= 0.0) || !(dist0 >= 0.0) || !(f0_gap >= 0.0)) {
    throw std::invalid_argument("bound inputs must be nonnegative");
  }
  if (eps.empty()) throw std::invalid_argument("bound inputs: empty sequences");
  if (eps.size() != e_norms.size()) {
    throw std::invalid_argument("bound inputs: sequence lengths differ");
  }
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] >= 0.0) || !(e_norms[i] >= 0.0)) {
      throw std::invalid_argument("bound inputs: negative error at index " +
                                  std::to_string(i));
    }
  }
}

BoundSeries bound_prop1(const BoundInputs& in) {
  in.validate();
  BoundSeries out;
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < in.length(); ++i) {
    const double k = static_cast<double>(i + 1);
    a += basic_term(in, i);
    b += in.eps[i] / in.L;
    out.A.push_back(a);
    out.B.push_back(b);
    const double inner = in.dist0 + 2.0 * a + std::sqrt(2.0 * b);
    out.bound_value.push_back(in.L / (2.0 * k) * inner * inner);
  }
  return out;
}

BoundSeries bound_prop2(const BoundInputs& in) {
  in.validate();
  BoundSeries out;
  double a = 0.0;
  double b = 0.0;
  for (std::size_t i = 0; i < in.length(); ++i) {
    const double k = static_cast<double>(i + 1);
    a += k * basic_term(in, i);
    b += k * k * in.eps[i] / in.L;
    out.A_tilde.push_back(a);
    out.B_tilde.push_back(b);
    const double inner = in.dist0 + 2.0 * a + std::sqrt(2.0 * b);
    out.bound_value.push_back(2.0 * in.L / ((k + 1.0) * (k + 1.0)) * inner *
                              inner);
  }
  return out;
}

BoundSeries bound_prop3(const BoundInputs& in) {
  in.validate();
  const double gamma = strong_gamma(in);
  const double rate = 1.0 - gamma;
  const double log_rate = std::log(rate);  // -inf when gamma == 1
  BoundSeries out;
  double raw = 0.0;
  // (1-gamma)^k * A-_k, kept without forming the growing factor.
  double scaled = 0.0;
  for (std::size_t i = 0; i < in.length(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double term = basic_term(in, i);
    raw += inflate(term, log_rate, k);
    out.A_bar.push_back(raw);
    scaled = rate * scaled + term;
    out.bound_value.push_back(std::pow(rate, k) * in.dist0 + scaled);
  }
  return out;
}

BoundSeries bound_prop4(const BoundInputs& in) {
  in.validate();
  const double gamma = strong_gamma(in);
  const double rate = 1.0 - std::sqrt(gamma);
  const double log_rate = std::log(rate);
  const double half_rate = std::sqrt(rate);
  BoundSeries out;
  double raw_a = 0.0;
  double raw_b = 0.0;
  // rate^{k/2} A^_k and rate^k B^_k.
  double scaled_a = 0.0;
  double scaled_b = 0.0;
  const double start = std::sqrt(2.0 * in.f0_gap);
  const double weight = std::sqrt(2.0 / in.mu);
  for (std::size_t i = 0; i < in.length(); ++i) {
    const double k = static_cast<double>(i + 1);
    const double term = in.e_norms[i] + std::sqrt(2.0 * in.L * in.eps[i]);
    raw_a += inflate(term, log_rate, 0.5 * k);
    raw_b += inflate(in.eps[i], log_rate, k);
    out.A_hat.push_back(raw_a);
    out.B_hat.push_back(raw_b);
    scaled_a = half_rate * scaled_a + term;
    scaled_b = rate * scaled_b + in.eps[i];
    const double inner = std::pow(rate, 0.5 * k) * start + scaled_a * weight +
                         std::sqrt(scaled_b);
    out.bound_value.push_back(inner * inner);
  }
  return out;
}

double lemma1_bound(std::span<const double> S, std::span<const double> lambda,
                    std::int64_t k) {
  if (S.size() != lambda.size()) {
    throw std::invalid_argument("lemma1_bound: sequence lengths differ");
  }
  if (k < 1 || static_cast<std::size_t>(k) > S.size()) {
    throw std::invalid_argument("lemma1_bound: k out of range");
  }
  double half_sum = 0.0;
  for (std::size_t i = 0; i < S.size(); ++i) {
    if (i > 0 && S[i] < S[i - 1]) {
      throw std::invalid_argument("lemma1_bound: S must be nondecreasing");
    }
    if (!(lambda[i] >= 0.0)) {
      throw std::invalid_argument("lemma1_bound: lambda must be nonnegative");
    }
    if (i < static_cast<std::size_t>(k)) half_sum += 0.5 * lambda[i];
  }
  const double s_k = S[static_cast<std::size_t>(k - 1)];
  return half_sum + std::sqrt(s_k + half_sum * half_sum);
}

double fit_rate_slope(std::span<const double> suboptimality,
                      std::int64_t k_min, std::int64_t k_max,
                      RateModel model) {
  if (k_min < 1 || k_max <= k_min) {
    throw std::invalid_argument("fit window needs 1 <= k_min < k_max");
  }
  if (static_cast<std::size_t>(k_max) > suboptimality.size()) {
    throw std::invalid_argument("fit window extends past the trace");
  }
  const double n = static_cast<double>(k_max - k_min + 1);
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::int64_t k = k_min; k <= k_max; ++k) {
    const double value = suboptimality[static_cast<std::size_t>(k - 1)];
    if (!(value > 0.0)) {
      throw std::invalid_argument(
          "nonpositive suboptimality at k = " + std::to_string(k) +
          "; the iterate reached the reference optimum, shrink the window");
    }
    const double x = model == RateModel::kPowerLaw
                         ? std::log(static_cast<double>(k))
                         : static_cast<double>(k);
    const double y = std::log(value);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

double fit_rate_slope(const IterateTrace& trace, double f_star,
                      TraceQuantity quantity, std::int64_t k_min,
                      std::int64_t k_max, RateModel model) {
  std::vector<double> values;
  values.reserve(trace.size());
  for (const auto& r : trace.records()) {
    const double f =
        quantity == TraceQuantity::kLastIterate ? r.f_xk : r.f_avg;
    values.push_back(f - f_star);
  }
  return fit_rate_slope(values, k_min, k_max, model);
}

BoundInputs bound_inputs_from_trace(const IterateTrace& trace, double L,
                                    double mu, double dist0, double f0_gap) {
  BoundInputs in;
  in.L = L;
  in.mu = mu;
  in.dist0 = dist0;
  in.f0_gap = f0_gap;
  in.eps = trace.eps_used();
  in.e_norms = trace.grad_err_norms();
  return in;
}

}  // namespace iprox
