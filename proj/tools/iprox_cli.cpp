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

// Experiment runner: `iprox run|bounds|rates [--config FILE] [flags]`.
// Exit codes: 0 success, 1 bound or validation violation, 2 usage error.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "iprox/experiment.hpp"

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> problem, solver, budget, out, grad_error,
      direction, ref_tol, window;
  std::optional<long long> seed;
  std::vector<std::string> strategies;
  bool corrupt_lipschitz = false;
};

void add_common_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "key = value config file");
  cmd->add_option("--problem", f.problem,
                  "lasso:n=..,d=..,cond=.. | cur:rows=..,cols=..,lrow=..,"
                  "lcol=.. | csv:path=..,lrow=..,lcol=..");
  cmd->add_option("--solver", f.solver,
                  "basic|accel|basic-strong|accel-strong[:L=..|L0=..,mu=..]");
  cmd->add_option("--strategy", f.strategies,
                  "poly:alpha=..[,c=..] | const:eps=.. | sweeps:n=.. | exact "
                  "| geom:c=..,q=.. (repeatable)");
  cmd->add_option("--budget", f.budget, "outer:<n> | inner:<n>");
  cmd->add_option("--seed", f.seed, "problem and error-direction seed");
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--grad-error", f.grad_error,
                  "none | poly:c=..,alpha=.. | geom:c=..,q=..");
  cmd->add_option("--direction", f.direction, "ascent | random");
  cmd->add_option("--ref-tol", f.ref_tol, "reference optimum tolerance");
  cmd->add_option("--window", f.window, "rate fit window k_min:k_max");
  cmd->add_flag("--corrupt-lipschitz", f.corrupt_lipschitz,
                "test hook: use L/2 (bounds must then fail)");
}

iprox::ExperimentSpec resolve(const Flags& f) {
  iprox::ConfigValues values;
  if (!f.config.empty()) values = iprox::read_config_file(f.config);
  const auto set = [&values](const std::string& key,
                             const std::optional<std::string>& v) {
    if (v) values[key] = {*v};
  };
  set("problem", f.problem);
  set("solver", f.solver);
  set("budget", f.budget);
  set("out", f.out);
  set("grad_error", f.grad_error);
  set("direction", f.direction);
  set("ref_tol", f.ref_tol);
  set("window", f.window);
  if (f.seed) values["seed"] = {std::to_string(*f.seed)};
  if (!f.strategies.empty()) values["strategy"] = f.strategies;
  if (f.corrupt_lipschitz) values["corrupt_lipschitz"] = {"true"};
  return iprox::spec_from_values(values);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inexact proximal-gradient experiments"};
  app.require_subcommand(1);
  Flags flags;
  auto* run = app.add_subcommand("run", "write per-strategy traces");
  auto* bounds = app.add_subcommand("bounds", "check traces against bounds");
  auto* rates = app.add_subcommand("rates", "fit convergence-rate slopes");
  for (auto* cmd : {run, bounds, rates}) add_common_flags(cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? iprox::kExitOk : iprox::kExitUsage;
  }

  try {
    const iprox::ExperimentSpec spec = resolve(flags);
    if (run->parsed()) return iprox::cmd_run(spec, std::cout);
    if (bounds->parsed()) return iprox::cmd_bounds(spec, std::cout);
    return iprox::cmd_rates(spec, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return iprox::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return iprox::kExitViolation;
  }
}
