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

#ifndef RDARS_FP_BCD_HPP
#define RDARS_FP_BCD_HPP

#include "rdars/fp_objective.hpp"
#include "rdars/phase_coefficients.hpp"
#include "rdars/phase_mm.hpp"
#include "rdars/phase_rga.hpp"

#include <optional>
#include <string>
#include <vector>

namespace rdars {

enum class PhaseSolver { kRga, kMm, kNone };

struct BcdOptions {
  PhaseSolver solver = PhaseSolver::kRga;
  bool optimize_power = true;
  std::size_t max_iter = 50;
  double tol = 1e-6;
  RgaOptions rga{};
  MmOptions mm{};
  PrelogMode prelog = PrelogMode::kCoherence;
  int verify_points = 1;  // random phase points per form check; 0 disables
  // Precomputed expansion coefficients; extracted from the statistics when null.
  const PhaseCoefficients* coefficients = nullptr;
};

/// Snapshot after one outer iteration (iteration 0 is the starting point).
struct IterationRecord {
  std::size_t iteration = 0;
  double f_q = 0.0;
  double weighted_sum_rate = 0.0;  // bits/s/Hz
  RVector p, sinr, rate;
};

enum class BcdStatus { kConverged, kMaxIterations, kPhaseSolverError };

struct BcdResult {
  OptimizerState state;
  std::vector<IterationRecord> history;
  std::vector<double> block_trace;  // f_q after every block update
  BcdStatus status = BcdStatus::kMaxIterations;
  std::string message;
  std::size_t inner_iterations = 0;  // total phase-solver iterations
};

namespace detail {

inline IterationRecord snapshot(const StatisticalCsi& csi, const OptimizerState& s,
                                const RateBreakdown& b, std::size_t iteration, double f_q,
                                PrelogMode mode) {
  IterationRecord r;
  r.iteration = iteration;
  r.f_q = f_q;
  r.p = s.p;
  const auto K = s.p.size();
  r.sinr.resize(K);
  r.rate.resize(K);
  CompensatedSum ws;
  for (Eigen::Index k = 0; k < K; ++k) {
    r.sinr(k) = sinr(static_cast<std::size_t>(k), s.p, b);
    r.rate(k) = rate(r.sinr(k), csi.config.tau, csi.config.tau_c, mode);
    ws += csi.config.weights[static_cast<std::size_t>(k)] * r.rate(k);
  }
  r.weighted_sum_rate = ws.value();
  return r;
}

}  // namespace detail

/// Block coordinate ascent on f_q: eta -> chi -> p -> chi -> theta per outer
/// iteration. Without power optimization the p and second chi blocks are
/// skipped. The objective is nondecreasing by construction.
inline BcdResult bcd_solve(const StatisticalCsi& csi, const PhaseShifts& theta0,
                           const RVector& p0, const BcdOptions& opt = {}) {
  const auto K = static_cast<Eigen::Index>(csi.K());
  if (p0.size() != K) throw StructuralError("bcd_solve: power vector must have K entries");
  if (static_cast<std::size_t>(theta0.theta.size()) != csi.N())
    throw StructuralError("bcd_solve: phase vector must have N entries");
  for (Eigen::Index k = 0; k < K; ++k)
    if (!(p0(k) >= 0.0 && p0(k) <= csi.config.p_max))
      throw DomainError("bcd_solve: initial powers must lie in [0, p_max]");
  if (theta0.modulus_error(csi.indicator) > 1e-9)
    throw DomainError("bcd_solve: initial phases must be unit-modulus");

  BcdResult res;
  OptimizerState& s = res.state;
  s.theta = theta0;
  s.p = p0;
  RateBreakdown b = rate_terms(csi, los_couplings(csi, s.theta));
  s.eta.resize(K);
  for (Eigen::Index k = 0; k < K; ++k) s.eta(k) = sinr(static_cast<std::size_t>(k), s.p, b);
  s.chi = update_chi(csi, s.p, s.eta, b);

  const auto record = [&](std::size_t it, double fq) {
    res.history.push_back(detail::snapshot(csi, s, b, it, fq, opt.prelog));
    s.objective_trace.push_back(fq);
    s.wsr_trace.push_back(res.history.back().weighted_sum_rate);
  };
  const auto fq_now = [&]() { return eval_f_q(csi, s, b); };

  double f_prev = fq_now();
  res.block_trace.push_back(f_prev);
  record(0, f_prev);

  const bool phases = opt.solver != PhaseSolver::kNone && csi.indicator.reflecting_count() > 0;
  const PhaseCoefficients pc = opt.coefficients ? *opt.coefficients : extract_coefficients(csi);

  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    s.eta = update_eta(csi, s.p, s.chi, b);
    res.block_trace.push_back(fq_now());
    s.chi = update_chi(csi, s.p, s.eta, b);
    res.block_trace.push_back(fq_now());
    if (opt.optimize_power) {
      s.p = update_power(csi, s.eta, s.chi, b);
      res.block_trace.push_back(fq_now());
      s.chi = update_chi(csi, s.p, s.eta, b);
      res.block_trace.push_back(fq_now());
    }
    if (phases) {
      try {
        const QuarticForm q = build_quartic_form(csi, pc, s);
        if (opt.verify_points > 0)
          verify_quartic_form(q, csi, s.p, s.eta, s.chi, it, opt.verify_points);
        const CVector x0 = s.theta.free_entries(csi.indicator);
        CVector x;
        if (opt.solver == PhaseSolver::kRga) {
          const RgaResult r = rga_solve(q, x0, opt.rga);
          x = r.x;
          res.inner_iterations += r.iterations;
        } else {
          const MmResult r = mm_solve(build_mm_form(q, opt.mm.power), x0, opt.mm);
          x = r.x;
          res.inner_iterations += r.iterations;
        }
        const PhaseShifts next = PhaseShifts::from_free(csi.indicator, x);
        const RateBreakdown b_next = rate_terms(csi, los_couplings(csi, next));
        // Both solvers ascend; the comparison only guards against rounding.
        if (eval_f_q(csi, s.p, s.eta, s.chi, b_next) >= fq_now()) {
          s.theta = next;
          b = b_next;
        }
      } catch (const SolverError& e) {
        res.status = BcdStatus::kPhaseSolverError;
        res.message = e.what();
        return res;
      }
      res.block_trace.push_back(fq_now());
    }
    const double f = fq_now();
    s.iterations = it;
    record(it, f);
    if (std::abs(f - f_prev) / std::max(1.0, std::abs(f)) < opt.tol) {
      res.status = BcdStatus::kConverged;
      break;
    }
    f_prev = f;
  }
  return res;
}

/// Start from theta = 1 on the reflecting elements and p = p_max.
inline BcdResult bcd_solve(const StatisticalCsi& csi, const BcdOptions& opt = {}) {
  return bcd_solve(csi, PhaseShifts::ones(csi.N()),
                   RVector::Constant(static_cast<Eigen::Index>(csi.K()), csi.config.p_max), opt);
}

}  // namespace rdars

#endif  // RDARS_FP_BCD_HPP
