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

// Experiment orchestration: baseline definitions, convergence traces, grid
// sweeps, Monte Carlo validation and the CSV rows handed to the plotting
// scripts. Every job is a pure function of (spec, seed), so the output does
// not depend on the thread count.

#ifndef RDARS_EXPERIMENTS_HPP
#define RDARS_EXPERIMENTS_HPP

#include "rdars/fp_bcd.hpp"
#include "rdars/mc_oracle.hpp"
#include "rdars/regression.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

namespace rdars {

enum class ExperimentKind { kValidate, kConvergence, kSweepL, kSweepP, kSweepN };

inline constexpr std::array<std::pair<ExperimentKind, std::string_view>, 5> kExperimentNames{{
    {ExperimentKind::kValidate, "validate"},
    {ExperimentKind::kConvergence, "convergence"},
    {ExperimentKind::kSweepL, "sweep_L"},
    {ExperimentKind::kSweepP, "sweep_p"},
    {ExperimentKind::kSweepN, "sweep_N"},
}};

inline std::string_view experiment_name(ExperimentKind k) {
  for (const auto& [kind, name] : kExperimentNames)
    if (kind == k) return name;
  return "unknown";
}

inline ExperimentKind parse_experiment(std::string_view s) {
  for (const auto& [kind, name] : kExperimentNames)
    if (name == s) return kind;
  throw DomainError("unknown experiment kind '" + std::string(s) + "'");
}

enum class Baseline {
  kRdarsJoint,
  kRdarsMm,
  kRdarsRga,
  kRdarsFixed,
  kRisJoint,
  kRisMm,
  kRisRga,
  kRisFixed,
  kDasPower,
  kNoRdarsPower,
};

inline constexpr std::array<std::pair<Baseline, std::string_view>, 10> kBaselineLabels{{
    {Baseline::kRdarsJoint, "RDARS Joint"},
    {Baseline::kRdarsMm, "RDARS MM"},
    {Baseline::kRdarsRga, "RDARS RGA"},
    {Baseline::kRdarsFixed, "RDARS"},
    {Baseline::kRisJoint, "RIS Joint"},
    {Baseline::kRisMm, "RIS MM"},
    {Baseline::kRisRga, "RIS RGA"},
    {Baseline::kRisFixed, "RIS"},
    {Baseline::kDasPower, "DAS Power"},
    {Baseline::kNoRdarsPower, "W.O. RDARS Power"},
}};

inline std::string_view baseline_label(Baseline b) {
  for (const auto& [base, label] : kBaselineLabels)
    if (base == b) return label;
  return "unknown";
}

inline Baseline parse_baseline(std::string_view s) {
  for (const auto& [base, label] : kBaselineLabels)
    if (label == s) return base;
  throw DomainError("unknown baseline '" + std::string(s) + "'");
}

inline std::vector<Baseline> all_baselines() {
  std::vector<Baseline> out;
  for (const auto& entry : kBaselineLabels) out.push_back(entry.first);
  return out;
}

inline std::vector<Baseline> sweep_baselines() {
  return {Baseline::kRdarsJoint, Baseline::kRisJoint, Baseline::kDasPower, Baseline::kNoRdarsPower};
}

struct ExperimentSpec {
  ExperimentKind kind = ExperimentKind::kConvergence;
  ScenarioSpec scenario;
  std::vector<Baseline> baselines;      // empty: all for convergence, the four joint ones for sweeps
  std::vector<double> grid;             // L, N or p_max in dBm
  std::vector<std::uint64_t> seeds{1};  // scenario seeds; validate uses the first as the MC seed
  std::size_t draws = 100000;
  std::string output;  // empty: standard output
  PhaseSolver joint_solver = PhaseSolver::kRga;
  PrelogMode prelog = PrelogMode::kCoherence;
  std::size_t max_iter = 50;
  double tol = 1e-6;
  unsigned threads = 1;
  bool wall_time = false;  // off keeps the CSV bit-reproducible

  std::size_t regression_count = 20;
  std::uint64_t regression_seed = 1;
  double analytic_scale = 1.0;  // negative control for validate; 1 in real runs

  bool is_sweep() const {
    return kind == ExperimentKind::kSweepL || kind == ExperimentKind::kSweepP ||
           kind == ExperimentKind::kSweepN;
  }

  std::vector<Baseline> effective_baselines() const {
    if (!baselines.empty()) return baselines;
    return is_sweep() ? sweep_baselines() : all_baselines();
  }

  void validate() const {
    auto need = [](bool ok, const std::string& what) {
      if (!ok) throw DomainError("ExperimentSpec: " + what);
    };
    need(!seeds.empty(), "at least one seed is required");
    need(max_iter > 0, "max_iter must be positive");
    need(tol >= 0.0, "tol must be nonnegative");
    if (kind == ExperimentKind::kValidate) {
      need(draws >= 2, "validation needs at least two draws");
      need(regression_count > 0, "regression_count must be positive");
      return;
    }
    if (!is_sweep()) return;
    need(!grid.empty(), "sweep grid must be nonempty");
    for (std::size_t i = 1; i < grid.size(); ++i)
      need(grid[i] > grid[i - 1], "sweep grid must be strictly increasing");
    for (double v : grid) {
      need(std::isfinite(v), "grid values must be finite");
      if (kind == ExperimentKind::kSweepL)
        need(v >= 1.0 && v == std::floor(v), "L grid values must be positive integers");
      if (kind == ExperimentKind::kSweepN)
        need(v >= static_cast<double>(scenario.a) && v == std::floor(v),
             "N grid values must be integers no smaller than a");
    }
  }
};

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

/// Scenario seen by a baseline: RIS turns every element to reflection, DAS
/// keeps only the connected elements and the no-RDARS case removes the panel.
inline ScenarioSpec baseline_scenario(ScenarioSpec s, Baseline b) {
  switch (b) {
    case Baseline::kRisJoint:
    case Baseline::kRisMm:
    case Baseline::kRisRga:
    case Baseline::kRisFixed:
      s.a = 0;
      s.connected_indices.clear();
      break;
    case Baseline::kDasPower:
      s.N = s.a;
      s.Ny = 0;
      s.connected_indices.clear();
      break;
    case Baseline::kNoRdarsPower:
      s.N = 0;
      s.a = 0;
      s.Ny = 0;
      s.connected_indices.clear();
      break;
    default:
      break;
  }
  return s;
}

inline BcdOptions baseline_options(Baseline b, const ExperimentSpec& spec) {
  BcdOptions o;
  o.max_iter = spec.max_iter;
  o.tol = spec.tol;
  o.prelog = spec.prelog;
  switch (b) {
    case Baseline::kRdarsJoint:
    case Baseline::kRisJoint:
      o.solver = spec.joint_solver;
      o.optimize_power = true;
      break;
    case Baseline::kRdarsMm:
    case Baseline::kRisMm:
      o.solver = PhaseSolver::kMm;
      o.optimize_power = false;
      break;
    case Baseline::kRdarsRga:
    case Baseline::kRisRga:
      o.solver = PhaseSolver::kRga;
      o.optimize_power = false;
      break;
    case Baseline::kRdarsFixed:
    case Baseline::kRisFixed:
      o.solver = PhaseSolver::kNone;
      o.optimize_power = false;
      break;
    case Baseline::kDasPower:
    case Baseline::kNoRdarsPower:
      o.solver = PhaseSolver::kNone;
      o.optimize_power = true;
      break;
  }
  return o;
}

inline StatisticalCsi scenario_statistics(const ScenarioSpec& s) {
  const Scenario sc = build_scenario(s);
  return derive_statistics(sc.config, sc.geometry, sc.indicator);
}

struct BaselineRun {
  BcdResult result;
  double seconds = 0.0;
};

inline BaselineRun run_baseline(const ScenarioSpec& scenario, Baseline b, const ExperimentSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  BaselineRun run;
  run.result = bcd_solve(scenario_statistics(baseline_scenario(scenario, b)), baseline_options(b, spec));
  run.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

// ---------------------------------------------------------------------------
// Result rows and CSV
// ---------------------------------------------------------------------------

struct ResultRow {
  std::string experiment;
  std::string seed;       // scenario seed, or "mean" for the across-seed average
  std::string baseline;
  std::string parameter;  // "L", "N", "p_max_dbm" or empty
  std::optional<double> value;
  long iteration = -1;    // -1 marks the final point
  double f_q = 0.0;
  double weighted_sum_rate = 0.0;
  std::vector<double> rate, power, sinr;
  std::string status;
  std::optional<double> wall_time;
};

inline constexpr std::string_view kResultHeader =
    "experiment,seed,baseline,parameter,value,iteration,f_q,weighted_sum_rate,rate,power,sinr,"
    "status,wall_time_s";

/// Shortest round-trip decimal form; independent of the global locale.
inline std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

inline std::string join_values(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ';';
    out += format_double(xs[i]);
  }
  return out;
}

inline void write_result_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << kResultHeader << '\n';
  for (const auto& r : rows) {
    os << r.experiment << ',' << r.seed << ',' << r.baseline << ',' << r.parameter << ','
       << (r.value ? format_double(*r.value) : std::string()) << ',' << r.iteration << ','
       << format_double(r.f_q) << ',' << format_double(r.weighted_sum_rate) << ','
       << join_values(r.rate) << ',' << join_values(r.power) << ',' << join_values(r.sinr) << ','
       << r.status << ',' << (r.wall_time ? format_double(*r.wall_time) : std::string()) << '\n';
  }
}

inline std::string status_label(BcdStatus s) {
  switch (s) {
    case BcdStatus::kConverged: return "converged";
    case BcdStatus::kMaxIterations: return "max_iter";
    case BcdStatus::kPhaseSolverError: return "solver_error";
  }
  return "unknown";
}

inline std::vector<double> to_std(const RVector& v) { return {v.data(), v.data() + v.size()}; }

inline ResultRow make_row(const ExperimentSpec& spec, std::string seed, Baseline b,
                          const IterationRecord& rec, long iteration, const BcdResult& res,
                          std::optional<double> wall) {
  ResultRow r;
  r.experiment = std::string(experiment_name(spec.kind));
  r.seed = std::move(seed);
  r.baseline = std::string(baseline_label(b));
  r.iteration = iteration;
  r.f_q = rec.f_q;
  r.weighted_sum_rate = rec.weighted_sum_rate;
  r.rate = to_std(rec.rate);
  r.power = to_std(rec.p);
  r.sinr = to_std(rec.sinr);
  r.status = status_label(res.status);
  if (spec.wall_time) r.wall_time = wall;
  return r;
}

struct ExperimentOutput {
  std::vector<ResultRow> rows;
  std::size_t solver_errors = 0;
};

namespace detail {

/// Runs job(0..count-1) on up to `threads` workers. Jobs write to their own
/// slots, so the result is independent of scheduling.
inline void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& job) {
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(count);
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            job(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline std::string swept_parameter(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::kSweepL: return "L";
    case ExperimentKind::kSweepN: return "N";
    case ExperimentKind::kSweepP: return "p_max_dbm";
    default: return "";
  }
}

inline ScenarioSpec apply_grid_value(ScenarioSpec s, ExperimentKind k, double v) {
  switch (k) {
    case ExperimentKind::kSweepL:
      s.L = static_cast<std::size_t>(v);
      s.Ly = 0;
      break;
    case ExperimentKind::kSweepN:
      s.N = static_cast<std::size_t>(v);
      s.Ny = 0;
      break;
    case ExperimentKind::kSweepP:
      s.p_max_dbm = v;
      break;
    default:
      break;
  }
  return s;
}

}  // namespace detail

/// Per-iteration traces of every baseline for each seed, followed by a final
/// row (iteration -1) per run.
inline ExperimentOutput run_convergence(const ExperimentSpec& spec) {
  spec.validate();
  const auto bases = spec.effective_baselines();
  const std::size_t jobs = spec.seeds.size() * bases.size();
  std::vector<BaselineRun> runs(jobs);
  detail::parallel_for(jobs, spec.threads, [&](std::size_t j) {
    ScenarioSpec s = spec.scenario;
    s.seed = spec.seeds[j / bases.size()];
    runs[j] = run_baseline(s, bases[j % bases.size()], spec);
  });

  ExperimentOutput out;
  for (std::size_t j = 0; j < jobs; ++j) {
    const std::string seed = std::to_string(spec.seeds[j / bases.size()]);
    const Baseline b = bases[j % bases.size()];
    const BcdResult& res = runs[j].result;
    if (res.status == BcdStatus::kPhaseSolverError) ++out.solver_errors;
    for (const auto& rec : res.history)
      out.rows.push_back(make_row(spec, seed, b, rec, static_cast<long>(rec.iteration), res, std::nullopt));
    out.rows.push_back(make_row(spec, seed, b, res.history.back(), -1, res, runs[j].seconds));
  }
  return out;
}

/// Final point of every baseline at each (grid value, seed), plus a row with
/// the across-seed mean. Rows are ordered by grid value, then baseline, then seed.
inline ExperimentOutput run_sweep(const ExperimentSpec& spec) {
  spec.validate();
  if (!spec.is_sweep()) throw DomainError("run_sweep: experiment kind is not a sweep");
  const auto bases = spec.effective_baselines();
  const std::size_t S = spec.seeds.size(), B = bases.size();
  const std::size_t jobs = spec.grid.size() * B * S;
  std::vector<BaselineRun> runs(jobs);
  detail::parallel_for(jobs, spec.threads, [&](std::size_t j) {
    const std::size_t g = j / (B * S), b = (j / S) % B, s = j % S;
    ScenarioSpec sc = detail::apply_grid_value(spec.scenario, spec.kind, spec.grid[g]);
    sc.seed = spec.seeds[s];
    runs[j] = run_baseline(sc, bases[b], spec);
  });

  ExperimentOutput out;
  const std::string param = detail::swept_parameter(spec.kind);
  for (std::size_t g = 0; g < spec.grid.size(); ++g)
    for (std::size_t b = 0; b < B; ++b) {
      ResultRow mean;
      bool all_ok = true;
      for (std::size_t s = 0; s < S; ++s) {
        const BaselineRun& run = runs[(g * B + b) * S + s];
        const BcdResult& res = run.result;
        if (res.status == BcdStatus::kPhaseSolverError) {
          ++out.solver_errors;
          all_ok = false;
        }
        ResultRow r = make_row(spec, std::to_string(spec.seeds[s]), bases[b], res.history.back(), -1,
                               res, run.seconds);
        r.parameter = param;
        r.value = spec.grid[g];
        const double w = 1.0 / static_cast<double>(S);
        if (s == 0) {
          mean = r;
          mean.seed = "mean";
          mean.f_q = 0.0;
          mean.weighted_sum_rate = 0.0;
          for (auto* v : {&mean.rate, &mean.power, &mean.sinr}) std::fill(v->begin(), v->end(), 0.0);
          mean.wall_time.reset();
        }
        mean.f_q += w * r.f_q;
        mean.weighted_sum_rate += w * r.weighted_sum_rate;
        for (std::size_t k = 0; k < r.rate.size(); ++k) {
          mean.rate[k] += w * r.rate[k];
          mean.power[k] += w * r.power[k];
          mean.sinr[k] += w * r.sinr[k];
        }
        out.rows.push_back(std::move(r));
      }
      mean.status = all_ok ? "ok" : "solver_error";
      out.rows.push_back(std::move(mean));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Closed form against Monte Carlo
// ---------------------------------------------------------------------------

struct ValidationRow {
  std::size_t case_index = 0;
  std::size_t L = 0, N = 0, a = 0, K = 0;
  std::string term;  // signal, leak, noise, interference, sinr
  std::size_t user = 0;
  std::optional<std::size_t> other;  // interfering user
  double analytic = 0.0, mc_mean = 0.0, std_error = 0.0, z = 0.0;
  bool pass = true;
};

inline constexpr std::string_view kValidationHeader =
    "case,L,N,a,K,term,user,other,analytic,mc_mean,std_error,z,pass";

struct ValidationOutput {
  std::vector<ValidationRow> rows;
  double max_abs_z = 0.0;
  std::size_t failures = 0;
  bool passed() const { return failures == 0; }
};

inline constexpr double kValidationThreshold = 3.0;

inline double z_score(double analytic, const McTerm& t) {
  const double diff = analytic - t.mean;
  if (t.std_error > 0.0) return diff / t.std_error;
  // A term with no sampling spread (identically zero) must match exactly.
  return std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(analytic))
             ? 0.0
             : std::numeric_limits<double>::infinity();
}

/// Compares every closed-form term with its Monte Carlo estimate on one case.
inline void validate_case(const RegressionCase& rc, const ExperimentSpec& spec, ValidationOutput& out) {
  McOptions mo;
  mo.draws = spec.draws;
  mo.seed = spec.seeds.front();
  mo.threads = spec.threads;
  mo.prelog = spec.prelog;
  const McEstimate est = estimate_sinr_terms(rc.csi, rc.phases, rc.p, mo);
  const RateBreakdown b = evaluate_rate(rc.csi, rc.phases, rc.p, spec.prelog);
  const SystemConfig& cfg = rc.csi.config;
  const auto add = [&](std::string term, std::size_t k, std::optional<std::size_t> i, double analytic,
                       const McTerm& t) {
    ValidationRow r;
    r.case_index = rc.index;
    r.L = cfg.L;
    r.N = cfg.N;
    r.a = cfg.a;
    r.K = cfg.K;
    r.term = std::move(term);
    r.user = k;
    r.other = i;
    r.analytic = spec.analytic_scale * analytic;
    r.mc_mean = t.mean;
    r.std_error = t.std_error;
    r.z = z_score(r.analytic, t);
    r.pass = std::abs(r.z) <= kValidationThreshold;
    out.max_abs_z = std::max(out.max_abs_z, std::abs(r.z));
    if (!r.pass) ++out.failures;
    out.rows.push_back(std::move(r));
  };
  for (std::size_t k = 0; k < cfg.K; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    add("signal", k, std::nullopt, b.signal(kk), est.signal[k]);
    add("leak", k, std::nullopt, b.leak(kk), est.leak[k]);
    add("noise", k, std::nullopt, b.noise(kk), est.noise[k]);
    for (std::size_t i = 0; i < cfg.K; ++i)
      if (i != k) add("interference", k, i, b.interference(kk, static_cast<Eigen::Index>(i)), est.interference[k][i]);
    add("sinr", k, std::nullopt, b.sinr(kk), est.sinr[k]);
  }
}

/// Runs the regression suite through the Monte Carlo oracle.
inline ValidationOutput run_validate(const ExperimentSpec& spec) {
  spec.validate();
  ValidationOutput out;
  for (const auto& rc : regression_suite(spec.regression_seed, spec.regression_count))
    validate_case(rc, spec, out);
  return out;
}

inline void write_validation_csv(std::ostream& os, const ValidationOutput& v) {
  os << kValidationHeader << '\n';
  for (const auto& r : v.rows) {
    os << r.case_index << ',' << r.L << ',' << r.N << ',' << r.a << ',' << r.K << ',' << r.term << ','
       << r.user << ',' << (r.other ? std::to_string(*r.other) : std::string()) << ','
       << format_double(r.analytic) << ',' << format_double(r.mc_mean) << ','
       << format_double(r.std_error) << ',' << format_double(r.z) << ',' << (r.pass ? 1 : 0) << '\n';
  }
}

}  // namespace rdars

#endif  // RDARS_EXPERIMENTS_HPP
