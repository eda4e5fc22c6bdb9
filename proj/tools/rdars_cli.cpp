// SPDX-License-Identifier: Apache-2.0
//
// rdars-mimo: statistical-CSI transceiver design for RDARS-aided massive MIMO
// Copyright (C) 2026 The rdars-mimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Command-line front end.
//
//   rdars_cli validate [--config f] [--seed s] [--draws n] [--output f]
//   rdars_cli converge [--config f] [--seed s] [--solver rga|mm] ...
//   rdars_cli sweep    --kind L|p|N [--grid v1,v2,...] ...
//
// Exit codes: 0 success, 1 usage or input error, 2 validation failure,
// 3 solver error in at least one run.

#include "rdars/config_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitValidation = 2;
constexpr int kExitSolver = 3;

struct CommonFlags {
  std::string config;
  std::vector<std::uint64_t> seeds;
  std::size_t draws = 0;
  std::string output;
  std::string solver;
  std::string prelog;
  unsigned threads = 0;
  bool wall_time = false;
};

void add_common(CLI::App* app, CommonFlags& f) {
  app->add_option("-c,--config", f.config, "JSON experiment config")->check(CLI::ExistingFile);
  app->add_option("-s,--seed", f.seeds, "Scenario seed(s); for validate the Monte Carlo seed");
  app->add_option("-d,--draws", f.draws, "Monte Carlo draws per configuration");
  app->add_option("-o,--output", f.output, "Output CSV path (default: standard output)");
  app->add_option("--solver", f.solver, "Phase solver of the joint baselines")
      ->check(CLI::IsMember({"rga", "mm"}));
  app->add_option("--prelog", f.prelog, "Pre-log factor: coherence=(tc-t)/tc, pilot=(tc-t)/t")
      ->check(CLI::IsMember({"coherence", "pilot"}));
  app->add_option("-j,--threads", f.threads, "Worker threads (output does not depend on it)");
  app->add_flag("--wall-time", f.wall_time, "Fill the wall_time_s column (breaks bit-reproducibility)");
}

// Config file first, then command-line overrides. A missing kind keeps the
// one named in the config.
rdars::ExperimentSpec resolve(const CommonFlags& f, std::optional<rdars::ExperimentKind> kind) {
  rdars::ExperimentSpec spec = f.config.empty() ? rdars::ExperimentSpec{} : rdars::load_experiment_config(f.config);
  if (kind) spec.kind = *kind;
  if (!f.seeds.empty()) spec.seeds = f.seeds;
  if (f.draws) spec.draws = f.draws;
  if (!f.output.empty()) spec.output = f.output;
  if (!f.solver.empty()) spec.joint_solver = rdars::detail::parse_solver(f.solver);
  if (!f.prelog.empty()) spec.prelog = rdars::detail::parse_prelog(f.prelog);
  if (f.threads) spec.threads = f.threads;
  if (f.wall_time) spec.wall_time = true;
  return spec;
}

template <class Writer>
void emit(const std::string& path, Writer&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rdars::DomainError("cannot open output '" + path + "'");
  write(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Statistical-CSI transceiver design for RDARS-aided massive MIMO"};
  app.require_subcommand(1);

  CommonFlags vf, cf, sf;
  auto* validate = app.add_subcommand("validate", "Closed-form terms against Monte Carlo");
  add_common(validate, vf);
  auto* converge = app.add_subcommand("converge", "Per-iteration traces of every baseline");
  add_common(converge, cf);
  auto* sweep = app.add_subcommand("sweep", "Final rates over a grid of L, p_max or N");
  add_common(sweep, sf);
  std::string sweep_kind;
  std::vector<double> grid;
  sweep->add_option("-k,--kind", sweep_kind, "Swept parameter")
      ->check(CLI::IsMember({"L", "p", "N"}));
  sweep->add_option("-g,--grid", grid, "Grid values (strictly increasing)")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*validate) {
      const auto spec = resolve(vf, rdars::ExperimentKind::kValidate);
      const auto res = rdars::run_validate(spec);
      emit(spec.output, [&](std::ostream& os) { rdars::write_validation_csv(os, res); });
      std::cerr << "validate: " << res.rows.size() << " terms, max |z| = " << res.max_abs_z << ", "
                << res.failures << " above " << rdars::kValidationThreshold << '\n';
      return res.passed() ? kExitOk : kExitValidation;
    }
    rdars::ExperimentOutput out;
    std::string target;
    if (*converge) {
      const auto spec = resolve(cf, rdars::ExperimentKind::kConvergence);
      out = rdars::run_convergence(spec);
      target = spec.output;
    } else {
      rdars::ExperimentSpec spec = resolve(sf, std::nullopt);
      if (sweep_kind == "L") spec.kind = rdars::ExperimentKind::kSweepL;
      if (sweep_kind == "p") spec.kind = rdars::ExperimentKind::kSweepP;
      if (sweep_kind == "N") spec.kind = rdars::ExperimentKind::kSweepN;
      if (!spec.is_sweep()) throw rdars::DomainError("sweep: pass --kind or a config naming the sweep");
      if (!grid.empty()) spec.grid = grid;
      out = rdars::run_sweep(spec);
      target = spec.output;
    }
    emit(target, [&](std::ostream& os) { rdars::write_result_csv(os, out.rows); });
    if (out.solver_errors) {
      std::cerr << out.solver_errors << " run(s) stopped on a phase-solver error\n";
      return kExitSolver;
    }
    return kExitOk;
  } catch (const rdars::SolverError& e) {
    std::cerr << "solver error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
