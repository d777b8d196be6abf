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

#ifndef IPROX_EXPERIMENT_HPP_
#define IPROX_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "iprox/core.hpp"
#include "iprox/solvers.hpp"

namespace iprox {

// Bad configuration or command line; maps to exit code 2.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct ProblemSpec {
  enum class Kind { kLasso, kCur, kCsv };
  Kind kind = Kind::kLasso;
  // lasso
  Index n = 100;
  Index d = 50;
  double condition = 10.0;
  std::optional<double> lambda;
  // cur / csv
  Index n_rows = 30;
  Index n_cols = 30;
  double lambda_row = 0.01;
  double lambda_col = 0.01;
  std::filesystem::path csv_path;
};

struct StrategySpec {
  std::string label;
  ProxSchedule prox;
};

struct Budget {
  enum class Kind { kOuterIters, kInnerSweepTotal };
  Kind kind = Kind::kOuterIters;
  std::int64_t amount = 100;
};

struct ExperimentSpec {
  ProblemSpec problem;
  Variant variant = Variant::kBasicConvex;
  // Fixed step with this L; unset means the problem's known L.
  std::optional<double> fixed_L;
  // When set, Lipschitz doubling from this initial estimate.
  std::optional<double> doubling_L0;
  std::optional<double> mu;
  GradientErrorSchedule gradient_error = NoGradientError{};
  ErrorDirection direction = ErrorDirection::kTowardAscent;
  std::vector<StrategySpec> strategies;
  Budget budget;
  std::uint64_t seed = 0;
  std::filesystem::path output_path = "out";
  std::optional<double> reference_tol;
  std::int64_t window_min = 50;
  std::int64_t window_max = 500;
  // Test hook: `bounds` evaluates the bounds with L/2, which is not a valid
  // Lipschitz constant, and must then report violations. Runs are unaffected.
  bool corrupt_lipschitz = false;
};

// Parsers for the value syntax shared by the config file and the flags.
// All throw UsageError with a message naming the bad field.
//   problem:   lasso:n=100,d=50,cond=10[,lambda=..] | cur:rows=30,cols=30,
//              lrow=0.01,lcol=0.01 | csv:path=W.csv,lrow=..,lcol=..
//   solver:    basic|accel|basic-strong|accel-strong[:L=<v>|L0=<v>,mu=<v>]
//   strategy:  poly:alpha=3[,c=1] | const:eps=1e-6 | sweeps:n=3 | exact |
//              geom:c=1,q=0.5
//   budget:    outer:<n> | inner:<n>
//   grad_error: none | poly:c=0.1,alpha=2 | geom:c=0.1,q=0.5
ProblemSpec parse_problem(std::string_view text);
StrategySpec parse_strategy(std::string_view text);
Budget parse_budget(std::string_view text);
GradientErrorSchedule parse_gradient_error(std::string_view text);
void parse_solver(std::string_view text, ExperimentSpec& spec);

// key -> values, in order of appearance. `strategy` may repeat.
using ConfigValues = std::map<std::string, std::vector<std::string>>;

// Reads `key = value` lines; '#' starts a comment.
ConfigValues read_config_file(const std::filesystem::path& path);
ExperimentSpec spec_from_values(const ConfigValues& values);

struct BuiltProblem {
  CompositeProblem problem;
  double L_known = 1.0;
  double mu_known = 0.0;
};

BuiltProblem build_problem(const ProblemSpec& spec, std::uint64_t seed);

SolverConfig make_solver_config(const ExperimentSpec& spec,
                                const StrategySpec& strategy,
                                const BuiltProblem& built,
                                const std::optional<Vector>& reference);

// Expected convergence regime for a schedule, e.g. "O(1/k)".
std::string expected_regime(Variant variant, const ProxSchedule& prox,
                            const GradientErrorSchedule& gradient);

// Writes one trace CSV per strategy plus summary.csv into output_path.
int cmd_run(const ExperimentSpec& spec, std::ostream& log);
// Writes bounds_<label>.csv per strategy; returns kExitViolation on any
// negative margin beyond 1e-9 (1 + |f*|).
int cmd_bounds(const ExperimentSpec& spec, std::ostream& log);
// Writes rates.csv with fitted slopes.
int cmd_rates(const ExperimentSpec& spec, std::ostream& log);

// 17 significant digits, '.' decimal separator.
std::string format_real(double value);

}  // namespace iprox

#endif  // IPROX_EXPERIMENT_HPP_
