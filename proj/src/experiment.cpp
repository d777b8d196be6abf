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

#include "iprox/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "iprox/bounds.hpp"
#include "iprox/problems.hpp"
#include "overloaded.hpp"

namespace iprox {
namespace {

using internal::Overloaded;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// "name:k=v,k=v" split into the name and its options.
struct Tagged {
  std::string name;
  std::map<std::string, std::string> options;

  bool has(const std::string& key) const { return options.count(key) > 0; }
  void check_keys(std::initializer_list<std::string_view> allowed,
                  std::string_view what) const {
    for (const auto& [key, _] : options) {
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
        throw UsageError(fmt::format("{}: unknown option '{}'", what, key));
      }
    }
  }
};

Tagged parse_tagged(std::string_view text, std::string_view what) {
  text = trim(text);
  Tagged out;
  const auto colon = text.find(':');
  out.name = std::string(trim(text.substr(0, colon)));
  if (out.name.empty()) throw UsageError(fmt::format("{}: empty value", what));
  if (colon == std::string_view::npos) return out;
  std::string_view rest = text.substr(colon + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw UsageError(
          fmt::format("{}: expected key=value, got '{}'", what, item));
    }
    out.options[std::string(trim(item.substr(0, eq)))] =
        std::string(trim(item.substr(eq + 1)));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return out;
}

double to_real(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() ||
      !std::isfinite(value)) {
    throw UsageError(fmt::format("{}: not a real number: '{}'", what, text));
  }
  return value;
}

std::int64_t to_integer(std::string_view text, std::string_view what) {
  text = trim(text);
  std::int64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw UsageError(fmt::format("{}: not an integer: '{}'", what, text));
  }
  return value;
}

double option_real(const Tagged& t, const std::string& key,
                   std::string_view what, std::optional<double> fallback) {
  if (!t.has(key)) {
    if (fallback) return *fallback;
    throw UsageError(fmt::format("{}: missing option '{}'", what, key));
  }
  return to_real(t.options.at(key), fmt::format("{} {}", what, key));
}

std::int64_t option_integer(const Tagged& t, const std::string& key,
                            std::string_view what,
                            std::optional<std::int64_t> fallback) {
  if (!t.has(key)) {
    if (fallback) return *fallback;
    throw UsageError(fmt::format("{}: missing option '{}'", what, key));
  }
  return to_integer(t.options.at(key), fmt::format("{} {}", what, key));
}

std::string sanitize_label(std::string_view text) {
  std::string out;
  for (char c : trim(text)) {
    const bool keep = std::isalnum(static_cast<unsigned char>(c)) ||
                      c == '.' || c == '-' || c == '+';
    out.push_back(keep ? c : '_');
  }
  return out;
}

const std::string& single_value(const ConfigValues& values,
                                const std::string& key) {
  const auto& list = values.at(key);
  if (list.size() != 1) {
    throw UsageError(fmt::format("'{}' given more than once", key));
  }
  return list.front();
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw UsageError("cannot write output file: " + path.string());
  }
  return out;
}

void prepare_output_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw UsageError("cannot create output directory: " + dir.string());
  }
}

void require_strategies(const ExperimentSpec& spec) {
  if (spec.strategies.empty()) {
    throw UsageError("at least one strategy is required");
  }
}

struct StrategyRun {
  const StrategySpec* strategy = nullptr;
  RunResult result;
};

// Independent solver runs, one per strategy, in strategy order.
std::vector<StrategyRun> run_all(const ExperimentSpec& spec,
                                 const BuiltProblem& built,
                                 const std::optional<Vector>& reference) {
  std::vector<SolverConfig> configs;
  for (const auto& s : spec.strategies) {
    configs.push_back(make_solver_config(spec, s, built, reference));
  }
  std::vector<std::future<RunResult>> pending;
  for (const auto& config : configs) {
    pending.push_back(std::async(std::launch::async, [&built, &config] {
      return run_solver(built.problem, config);
    }));
  }
  std::vector<StrategyRun> runs;
  for (std::size_t i = 0; i < pending.size(); ++i) {
    runs.push_back(StrategyRun{&spec.strategies[i], pending[i].get()});
  }
  return runs;
}

ReferenceSolution reference_for(const ExperimentSpec& spec,
                                const BuiltProblem& built) {
  // Default: 1e-12 relative to the objective at the starting point.
  const double f0 = evaluate_objective(built.problem,
                                       Vector::Zero(built.problem.dimension));
  const double tol =
      spec.reference_tol.value_or(1e-12 * (1.0 + std::abs(f0)));
  return solve_reference(built.problem, tol);
}

void write_trace_csv(std::ostream& out, const IterateTrace& trace) {
  out << "k,cumulative_inner_iters,f_xk,f_avg,eps_used,grad_err_norm,"
         "L_estimate,dist_to_opt\n";
  for (const auto& r : trace.records()) {
    out << r.k << ',' << r.cumulative_inner_iters << ',' << format_real(r.f_xk)
        << ',' << format_real(r.f_avg) << ',' << format_real(r.eps_used) << ','
        << format_real(r.grad_err_norm) << ',' << format_real(r.L_estimate)
        << ',';
    if (r.dist_to_opt) out << format_real(*r.dist_to_opt);
    out << '\n';
  }
}

// Exponent p with error magnitudes (||e_k|| and sqrt(eps_k)) ~ k^{-p};
// +inf for geometric or absent errors, 0 for non-decaying ones.
double error_decay_exponent(const ProxSchedule& prox,
                            const GradientErrorSchedule& gradient) {
  const double inf = std::numeric_limits<double>::infinity();
  const double prox_exp = std::visit(
      Overloaded{
          [inf](const ExactSolve&) { return inf; },
          [](const PolyDecay& p) { return 0.5 * p.exponent; },
          [inf](const GeometricDecay&) { return inf; },
          [](const ConstantTolerance&) { return 0.0; },
          [](const FixedSweeps&) { return 0.0; },
      },
      prox);
  const double grad_exp =
      std::visit(Overloaded{
                     [inf](const NoGradientError&) { return inf; },
                     [](const PolyDecay& p) { return p.exponent; },
                     [inf](const GeometricDecay&) { return inf; },
                 },
                 gradient);
  return std::min(prox_exp, grad_exp);
}

}  // namespace

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

ProblemSpec parse_problem(std::string_view text) {
  const Tagged t = parse_tagged(text, "problem");
  ProblemSpec spec;
  if (t.name == "lasso") {
    t.check_keys({"n", "d", "cond", "lambda"}, "problem lasso");
    spec.kind = ProblemSpec::Kind::kLasso;
    spec.n = option_integer(t, "n", "problem lasso", 100);
    spec.d = option_integer(t, "d", "problem lasso", 50);
    spec.condition = option_real(t, "cond", "problem lasso", 10.0);
    if (t.has("lambda")) {
      spec.lambda = option_real(t, "lambda", "problem lasso", std::nullopt);
    }
    if (spec.n < 1 || spec.d < 1 || spec.condition < 1.0) {
      throw UsageError("problem lasso: need n, d >= 1 and cond >= 1");
    }
  } else if (t.name == "cur" || t.name == "csv") {
    const bool csv = t.name == "csv";
    spec.kind = csv ? ProblemSpec::Kind::kCsv : ProblemSpec::Kind::kCur;
    if (csv) {
      t.check_keys({"path", "lrow", "lcol"}, "problem csv");
      if (!t.has("path")) throw UsageError("problem csv: missing option 'path'");
      spec.csv_path = t.options.at("path");
    } else {
      t.check_keys({"rows", "cols", "lrow", "lcol"}, "problem cur");
      spec.n_rows = option_integer(t, "rows", "problem cur", 30);
      spec.n_cols = option_integer(t, "cols", "problem cur", 30);
      if (spec.n_rows < 1 || spec.n_cols < 1) {
        throw UsageError("problem cur: rows and cols must be >= 1");
      }
    }
    spec.lambda_row = option_real(t, "lrow", "problem", 0.01);
    spec.lambda_col = option_real(t, "lcol", "problem", 0.01);
    if (spec.lambda_row < 0.0 || spec.lambda_col < 0.0) {
      throw UsageError("problem: lrow and lcol must be nonnegative");
    }
  } else {
    throw UsageError("unknown problem kind '" + t.name + "'");
  }
  return spec;
}

StrategySpec parse_strategy(std::string_view text) {
  const Tagged t = parse_tagged(text, "strategy");
  StrategySpec spec;
  spec.label = sanitize_label(text);
  if (t.name == "poly") {
    t.check_keys({"alpha", "c"}, "strategy poly");
    const PolyDecay p{option_real(t, "c", "strategy poly", 1.0),
                      option_real(t, "alpha", "strategy poly", std::nullopt)};
    if (!(p.exponent > 0.0) || !(p.scale > 0.0)) {
      throw UsageError("strategy poly: alpha and c must be positive");
    }
    spec.prox = p;
  } else if (t.name == "const") {
    t.check_keys({"eps"}, "strategy const");
    const double eps = option_real(t, "eps", "strategy const", std::nullopt);
    if (!(eps > 0.0)) throw UsageError("strategy const: eps must be positive");
    spec.prox = ConstantTolerance{eps};
  } else if (t.name == "sweeps") {
    t.check_keys({"n"}, "strategy sweeps");
    const auto n = option_integer(t, "n", "strategy sweeps", std::nullopt);
    if (n < 1) throw UsageError("strategy sweeps: n must be >= 1");
    spec.prox = FixedSweeps{n};
  } else if (t.name == "exact") {
    t.check_keys({}, "strategy exact");
    spec.prox = ExactSolve{};
  } else if (t.name == "geom") {
    t.check_keys({"c", "q"}, "strategy geom");
    const GeometricDecay g{option_real(t, "c", "strategy geom", 1.0),
                           option_real(t, "q", "strategy geom", std::nullopt)};
    if (!(g.scale > 0.0) || !(g.ratio > 0.0 && g.ratio < 1.0)) {
      throw UsageError("strategy geom: need c > 0 and 0 < q < 1");
    }
    spec.prox = g;
  } else {
    throw UsageError("unknown strategy '" + t.name + "'");
  }
  return spec;
}

Budget parse_budget(std::string_view text) {
  text = trim(text);
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) {
    throw UsageError("budget: expected outer:<n> or inner:<n>");
  }
  const std::string_view kind = trim(text.substr(0, colon));
  Budget budget;
  if (kind == "outer") {
    budget.kind = Budget::Kind::kOuterIters;
  } else if (kind == "inner") {
    budget.kind = Budget::Kind::kInnerSweepTotal;
  } else {
    throw UsageError("budget: unknown kind '" + std::string(kind) + "'");
  }
  budget.amount = to_integer(text.substr(colon + 1), "budget");
  if (budget.amount < 1) throw UsageError("budget must be positive");
  return budget;
}

GradientErrorSchedule parse_gradient_error(std::string_view text) {
  const Tagged t = parse_tagged(text, "grad_error");
  if (t.name == "none") {
    t.check_keys({}, "grad_error none");
    return NoGradientError{};
  }
  if (t.name == "poly") {
    t.check_keys({"c", "alpha"}, "grad_error poly");
    const PolyDecay p{option_real(t, "c", "grad_error poly", 1.0),
                      option_real(t, "alpha", "grad_error poly", std::nullopt)};
    if (!(p.scale >= 0.0) || !(p.exponent > 0.0)) {
      throw UsageError("grad_error poly: need c >= 0 and alpha > 0");
    }
    return p;
  }
  if (t.name == "geom") {
    t.check_keys({"c", "q"}, "grad_error geom");
    const GeometricDecay g{option_real(t, "c", "grad_error geom", 1.0),
                           option_real(t, "q", "grad_error geom", std::nullopt)};
    if (!(g.scale >= 0.0) || !(g.ratio > 0.0 && g.ratio < 1.0)) {
      throw UsageError("grad_error geom: need c >= 0 and 0 < q < 1");
    }
    return g;
  }
  throw UsageError("unknown grad_error '" + t.name + "'");
}

void parse_solver(std::string_view text, ExperimentSpec& spec) {
  const Tagged t = parse_tagged(text, "solver");
  t.check_keys({"L", "L0", "mu"}, "solver");
  if (t.name == "basic") {
    spec.variant = Variant::kBasicConvex;
  } else if (t.name == "accel") {
    spec.variant = Variant::kAccelConvex;
  } else if (t.name == "basic-strong") {
    spec.variant = Variant::kBasicStrong;
  } else if (t.name == "accel-strong") {
    spec.variant = Variant::kAccelStrong;
  } else {
    throw UsageError("unknown solver '" + t.name + "'");
  }
  if (t.has("L") && t.has("L0")) {
    throw UsageError("solver: give either L (fixed) or L0 (doubling)");
  }
  spec.fixed_L.reset();
  spec.doubling_L0.reset();
  if (t.has("L") && t.options.at("L") != "known") {
    spec.fixed_L = option_real(t, "L", "solver", std::nullopt);
    if (!(*spec.fixed_L > 0.0)) throw UsageError("solver: L must be positive");
  }
  if (t.has("L0")) {
    spec.doubling_L0 = option_real(t, "L0", "solver", std::nullopt);
    if (!(*spec.doubling_L0 > 0.0)) {
      throw UsageError("solver: L0 must be positive");
    }
  }
  if (t.has("mu")) {
    spec.mu = option_real(t, "mu", "solver", std::nullopt);
    if (!(*spec.mu >= 0.0)) throw UsageError("solver: mu must be >= 0");
  }
}

ConfigValues read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file: " + path.string());
  ConfigValues values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    view = trim(view.substr(0, view.find('#')));
    if (view.empty()) continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw UsageError(fmt::format("config line {}: expected key = value",
                                   line_no));
    }
    values[std::string(trim(view.substr(0, eq)))].emplace_back(
        trim(view.substr(eq + 1)));
  }
  return values;
}

ExperimentSpec spec_from_values(const ConfigValues& values) {
  static const std::vector<std::string> kKnown = {
      "problem", "solver",  "strategy", "budget", "seed",
      "out",     "grad_error", "direction", "ref_tol", "window",
      "corrupt_lipschitz"};
  for (const auto& [key, _] : values) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      throw UsageError("unknown config key '" + key + "'");
    }
  }
  ExperimentSpec spec;
  if (values.count("problem")) {
    spec.problem = parse_problem(single_value(values, "problem"));
  }
  if (values.count("solver")) parse_solver(single_value(values, "solver"), spec);
  if (values.count("strategy")) {
    for (const auto& s : values.at("strategy")) {
      spec.strategies.push_back(parse_strategy(s));
    }
  }
  if (values.count("budget")) {
    spec.budget = parse_budget(single_value(values, "budget"));
  }
  if (values.count("seed")) {
    const auto seed = to_integer(single_value(values, "seed"), "seed");
    if (seed < 0) throw UsageError("seed must be nonnegative");
    spec.seed = static_cast<std::uint64_t>(seed);
  }
  if (values.count("out")) spec.output_path = single_value(values, "out");
  if (values.count("grad_error")) {
    spec.gradient_error =
        parse_gradient_error(single_value(values, "grad_error"));
  }
  if (values.count("direction")) {
    const auto& dir = single_value(values, "direction");
    if (dir == "ascent") {
      spec.direction = ErrorDirection::kTowardAscent;
    } else if (dir == "random") {
      spec.direction = ErrorDirection::kSeededRandom;
    } else {
      throw UsageError("direction must be 'ascent' or 'random'");
    }
  }
  if (values.count("ref_tol")) {
    spec.reference_tol = to_real(single_value(values, "ref_tol"), "ref_tol");
    if (!(*spec.reference_tol > 0.0)) throw UsageError("ref_tol must be > 0");
  }
  if (values.count("window")) {
    const std::string& w = single_value(values, "window");
    const auto colon = w.find(':');
    if (colon == std::string::npos) {
      throw UsageError("window: expected <k_min>:<k_max>");
    }
    spec.window_min = to_integer(std::string_view(w).substr(0, colon), "window");
    spec.window_max =
        to_integer(std::string_view(w).substr(colon + 1), "window");
    if (spec.window_min < 1 || spec.window_max <= spec.window_min) {
      throw UsageError("window: need 1 <= k_min < k_max");
    }
  }
  if (values.count("corrupt_lipschitz")) {
    const auto& v = single_value(values, "corrupt_lipschitz");
    spec.corrupt_lipschitz = v == "1" || v == "true";
  }
  return spec;
}

BuiltProblem build_problem(const ProblemSpec& spec, std::uint64_t seed) {
  BuiltProblem built{};
  switch (spec.kind) {
    case ProblemSpec::Kind::kLasso: {
      const LassoInstance inst =
          gen_lasso(seed, spec.n, spec.d, spec.condition, spec.lambda);
      return BuiltProblem{lasso_problem(inst), inst.L_known, inst.mu_known};
    }
    case ProblemSpec::Kind::kCur:
    case ProblemSpec::Kind::kCsv: {
      CurInstance inst;
      if (spec.kind == ProblemSpec::Kind::kCur) {
        inst = gen_cur(seed, spec.n_rows, spec.n_cols, spec.lambda_row,
                       spec.lambda_col);
      } else {
        try {
          inst = cur_from_matrix(load_csv_matrix(spec.csv_path),
                                 spec.lambda_row, spec.lambda_col);
        } catch (const std::invalid_argument& e) {
          throw UsageError(e.what());
        }
      }
      return BuiltProblem{cur_problem(inst), inst.L_known, inst.mu_known};
    }
  }
  return built;
}

SolverConfig make_solver_config(const ExperimentSpec& spec,
                                const StrategySpec& strategy,
                                const BuiltProblem& built,
                                const std::optional<Vector>& reference) {
  SolverConfig config;
  config.variant = spec.variant;
  config.schedule.prox = strategy.prox;
  config.schedule.gradient = spec.gradient_error;
  config.schedule.direction = spec.direction;
  if (spec.doubling_L0) {
    config.lipschitz = DoublingLipschitz{*spec.doubling_L0};
  } else {
    config.lipschitz = FixedLipschitz{spec.fixed_L.value_or(built.L_known)};
  }
  config.mu = spec.mu.value_or(
      spec.variant == Variant::kBasicStrong ||
              spec.variant == Variant::kAccelStrong
          ? built.mu_known
          : 0.0);
  config.x0 = Vector::Zero(built.problem.dimension);
  config.seed = spec.seed;
  config.reference = reference;
  config.max_outer = spec.budget.amount;
  if (spec.budget.kind == Budget::Kind::kInnerSweepTotal) {
    config.inner_budget = spec.budget.amount;
  }
  return config;
}

std::string expected_regime(Variant variant, const ProxSchedule& prox,
                            const GradientErrorSchedule& gradient) {
  const double p = error_decay_exponent(prox, gradient);
  const bool geometric_or_none = std::isinf(p);
  switch (variant) {
    case Variant::kBasicConvex:
      if (p > 1.0) return "O(1/k)";
      if (p == 1.0) return "O(log^2 k / k)";
      if (p > 0.5) return "slower than O(1/k)";
      return "no convergence guarantee";
    case Variant::kAccelConvex:
      if (p > 2.0) return "O(1/k^2)";
      if (p == 2.0) return "O(log^2 k / k^2)";
      if (p > 1.0) return "slower than O(1/k^2)";
      return "no convergence guarantee";
    case Variant::kBasicStrong:
    case Variant::kAccelStrong:
      if (geometric_or_none) return "linear";
      if (p > 0.0) return "sublinear (error-limited)";
      return "no convergence guarantee";
  }
  return "unknown";
}

int cmd_run(const ExperimentSpec& spec, std::ostream& log) {
  require_strategies(spec);
  prepare_output_directory(spec.output_path);
  const BuiltProblem built = build_problem(spec.problem, spec.seed);
  std::optional<Vector> reference;
  if (spec.reference_tol) reference = reference_for(spec, built).x_star;

  const auto runs = run_all(spec, built, reference);
  const double f0 = evaluate_objective(
      built.problem, Vector::Zero(built.problem.dimension));

  struct Row {
    std::string label;
    std::int64_t outer = 0;
    std::int64_t inner = 0;
    double f = 0.0;
  };
  std::vector<Row> rows;
  for (const auto& run : runs) {
    auto out = open_output(spec.output_path / (run.strategy->label + ".csv"));
    write_trace_csv(out, run.result.trace);
    // Objective available once the budget is spent: the last iterate whose
    // cumulative inner cost fits in the budget.
    Row row{run.strategy->label, 0, 0, f0};
    for (const auto& r : run.result.trace.records()) {
      if (spec.budget.kind == Budget::Kind::kInnerSweepTotal &&
          r.cumulative_inner_iters > spec.budget.amount) {
        break;
      }
      row.outer = r.k;
      row.inner = r.cumulative_inner_iters;
      row.f = r.f_xk;
    }
    rows.push_back(row);
    log << run.strategy->label << ": " << run.result.trace.size()
        << " outer iterations, f = " << format_real(row.f) << '\n';
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.f < b.f; });
  auto summary = open_output(spec.output_path / "summary.csv");
  summary << "rank,strategy,outer_iters,cumulative_inner_iters,f_at_budget\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    summary << i + 1 << ',' << rows[i].label << ',' << rows[i].outer << ','
            << rows[i].inner << ',' << format_real(rows[i].f) << '\n';
  }
  return kExitOk;
}

int cmd_bounds(const ExperimentSpec& spec, std::ostream& log) {
  require_strategies(spec);
  if (spec.doubling_L0) {
    throw UsageError("bounds needs a fixed step (solver option L=...)");
  }
  prepare_output_directory(spec.output_path);
  const BuiltProblem built = build_problem(spec.problem, spec.seed);
  const ReferenceSolution ref = reference_for(spec, built);
  const auto runs = run_all(spec, built, ref.x_star);

  const double slack = 1e-9 * (1.0 + std::abs(ref.f_star));
  const Vector x0 = Vector::Zero(built.problem.dimension);
  const double dist0 = (x0 - ref.x_star).norm();
  const double f0_gap =
      std::max(evaluate_objective(built.problem, x0) - ref.f_star, 0.0);

  int status = kExitOk;
  for (const auto& run : runs) {
    const SolverConfig config =
        make_solver_config(spec, *run.strategy, built, ref.x_star);
    double L = std::get<FixedLipschitz>(config.lipschitz).L;
    if (spec.corrupt_lipschitz) L *= 0.5;
    const BoundInputs inputs = bound_inputs_from_trace(
        run.result.trace, L, std::min(config.mu, L), dist0, f0_gap);
    BoundSeries series;
    switch (spec.variant) {
      case Variant::kBasicConvex: series = bound_prop1(inputs); break;
      case Variant::kAccelConvex: series = bound_prop2(inputs); break;
      case Variant::kBasicStrong: series = bound_prop3(inputs); break;
      case Variant::kAccelStrong: series = bound_prop4(inputs); break;
    }

    auto out =
        open_output(spec.output_path / ("bounds_" + run.strategy->label + ".csv"));
    out << "k,measured_subopt,bound_value,margin\n";
    std::int64_t violations = 0;
    double worst = std::numeric_limits<double>::infinity();
    const auto& records = run.result.trace.records();
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto& r = records[i];
      double measured = 0.0;
      switch (spec.variant) {
        case Variant::kBasicConvex: measured = r.f_avg - ref.f_star; break;
        case Variant::kBasicStrong: measured = *r.dist_to_opt; break;
        default: measured = r.f_xk - ref.f_star; break;
      }
      const double margin = series.bound_value[i] - measured;
      worst = std::min(worst, margin);
      if (margin < -slack) ++violations;
      out << r.k << ',' << format_real(measured) << ','
          << format_real(series.bound_value[i]) << ',' << format_real(margin)
          << '\n';
    }
    log << run.strategy->label << ": " << violations
        << " bound violations, smallest margin " << format_real(worst) << '\n';
    if (violations > 0) status = kExitViolation;
  }
  return status;
}

int cmd_rates(const ExperimentSpec& spec, std::ostream& log) {
  require_strategies(spec);
  prepare_output_directory(spec.output_path);
  const BuiltProblem built = build_problem(spec.problem, spec.seed);
  const ReferenceSolution ref = reference_for(spec, built);
  const auto runs = run_all(spec, built, ref.x_star);

  const bool strong = spec.variant == Variant::kBasicStrong ||
                      spec.variant == Variant::kAccelStrong;
  const RateModel model = strong ? RateModel::kGeometric : RateModel::kPowerLaw;
  const TraceQuantity quantity = spec.variant == Variant::kBasicConvex
                                     ? TraceQuantity::kAveragedIterate
                                     : TraceQuantity::kLastIterate;

  int status = kExitOk;
  auto out = open_output(spec.output_path / "rates.csv");
  out << "strategy,variant,model,k_min,k_max,slope,expected_regime\n";
  for (const auto& run : runs) {
    const auto& trace = run.result.trace;
    std::string slope_text;
    try {
      if (static_cast<std::int64_t>(trace.size()) < spec.window_max) {
        throw std::invalid_argument("trace shorter than the fit window");
      }
      const double slope =
          fit_rate_slope(trace, ref.f_star, quantity, spec.window_min,
                         spec.window_max, model);
      slope_text = format_real(slope);
      log << run.strategy->label << ": slope " << slope_text << '\n';
    } catch (const std::invalid_argument& e) {
      log << run.strategy->label << ": cannot fit slope: " << e.what() << '\n';
      status = kExitViolation;
    }
    out << run.strategy->label << ',' << variant_name(spec.variant) << ','
        << (strong ? "geometric" : "power-law") << ',' << spec.window_min
        << ',' << spec.window_max << ',' << slope_text << ",\""
        << expected_regime(spec.variant, run.strategy->prox,
                           spec.gradient_error)
        << "\"\n";
  }
  return status;
}

}  // namespace iprox
