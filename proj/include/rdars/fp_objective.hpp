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

#ifndef RDARS_FP_OBJECTIVE_HPP
#define RDARS_FP_OBJECTIVE_HPP

#include "rdars/analytic_rate.hpp"
#include "rdars/channel.hpp"

#include <cmath>
#include <vector>

namespace rdars {

// Fractional-programming reformulation of the weighted sum rate. The FP
// machinery works in nats; the prelog and log2 are applied only when rates
// are reported.

/// Iterate of the block coordinate ascent.
struct OptimizerState {
  PhaseShifts theta;
  RVector p;    // W, in [0, p_max]
  RVector eta;  // log-ratio duals, >= 0
  RVector chi;  // quadratic-transform duals, >= 0
  std::vector<double> objective_trace;  // f_q after each outer iteration
  std::vector<double> wsr_trace;        // weighted sum rate (bits/s/Hz), same points
  std::size_t iterations = 0;
};

namespace detail {

inline double weight(const StatisticalCsi& csi, Eigen::Index k) {
  return csi.config.weights[static_cast<std::size_t>(k)];
}

// p_k E_leak + sum_{i != k} p_i I_{k,i} + E_noise, without the signal term.
inline double disturbance(Eigen::Index k, const RVector& p, const RateBreakdown& b) {
  CompensatedSum s;
  s += p(k) * b.leak(k);
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (i != k) s += p(i) * b.interference(k, i);
  s += b.noise(k);
  return s.value();
}

inline void check_sizes(const StatisticalCsi& csi, const RVector& v, const char* what) {
  if (static_cast<std::size_t>(v.size()) != csi.K())
    throw StructuralError(std::string(what) + ": expected one entry per user");
}

}  // namespace detail

/// Quadratic-transform objective at (eta, chi, p) for the terms `b`.
inline double eval_f_q(const StatisticalCsi& csi, const RVector& p, const RVector& eta,
                       const RVector& chi, const RateBreakdown& b) {
  detail::check_sizes(csi, p, "eval_f_q");
  detail::check_sizes(csi, eta, "eval_f_q");
  detail::check_sizes(csi, chi, "eval_f_q");
  CompensatedSum total;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double w = detail::weight(csi, k);
    const double ps = p(k) * b.signal(k);
    total += w * std::log1p(eta(k)) - w * eta(k);
    total += 2.0 * chi(k) * std::sqrt(w * (1.0 + eta(k)) * ps);
    total += -chi(k) * chi(k) * (ps + detail::disturbance(k, p, b));
  }
  return total.value();
}

inline double eval_f_q(const StatisticalCsi& csi, const OptimizerState& s, const RateBreakdown& b) {
  return eval_f_q(csi, s.p, s.eta, s.chi, b);
}

/// Lagrangian-dual objective before the quadratic transform.
inline double eval_f_r(const StatisticalCsi& csi, const RVector& p, const RVector& eta,
                       const RateBreakdown& b) {
  detail::check_sizes(csi, p, "eval_f_r");
  detail::check_sizes(csi, eta, "eval_f_r");
  CompensatedSum total;
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double w = detail::weight(csi, k);
    const double ps = p(k) * b.signal(k);
    const double all = ps + detail::disturbance(k, p, b);
    total += w * std::log1p(eta(k)) - w * eta(k);
    if (ps > 0.0) total += w * (1.0 + eta(k)) * ps / all;
  }
  return total.value();
}

/// Weighted sum of ln(1 + SINR_k).
inline double weighted_log_rate(const StatisticalCsi& csi, const RVector& p,
                                const RateBreakdown& b) {
  CompensatedSum total;
  for (Eigen::Index k = 0; k < p.size(); ++k)
    total += detail::weight(csi, k) * std::log1p(sinr(static_cast<std::size_t>(k), p, b));
  return total.value();
}

/// Closed-form maximizer of f_q over eta.
inline RVector update_eta(const StatisticalCsi& csi, const RVector& p, const RVector& chi,
                          const RateBreakdown& b) {
  detail::check_sizes(csi, p, "update_eta");
  RVector eta(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double w = detail::weight(csi, k);
    if (!(w > 0.0)) throw DomainError("update_eta: weights must be positive");
    const double kappa = std::sqrt(chi(k) * chi(k) * p(k) * b.signal(k) / w);
    eta(k) = 0.5 * (kappa * kappa + kappa * std::sqrt(kappa * kappa + 4.0));
  }
  return eta;
}

/// Closed-form maximizer of f_q over chi.
inline RVector update_chi(const StatisticalCsi& csi, const RVector& p, const RVector& eta,
                          const RateBreakdown& b) {
  detail::check_sizes(csi, p, "update_chi");
  RVector chi(p.size());
  for (Eigen::Index k = 0; k < p.size(); ++k) {
    const double w = detail::weight(csi, k);
    const double ps = p(k) * b.signal(k);
    const double den = ps + detail::disturbance(k, p, b);
    if (!(den > 0.0)) {
      // A user whose estimated channel is identically zero sees nothing at
      // all; it is switched off rather than treated as an error.
      if (b.signal(k) == 0.0) {
        chi(k) = 0.0;
        continue;
      }
      throw DomainError("update_chi: zero received power and noise");
    }
    chi(k) = std::sqrt(w * (1.0 + eta(k)) * ps) / den;
  }
  return chi;
}

/// Closed-form maximizer of f_q over the box [0, p_max]^K.
/// The denominator uses I_{i,k}: the interference user k causes at user i.
inline RVector update_power(const StatisticalCsi& csi, const RVector& eta, const RVector& chi,
                            const RateBreakdown& b) {
  detail::check_sizes(csi, eta, "update_power");
  const Eigen::Index K = eta.size();
  const double p_max = csi.config.p_max;
  RVector p(K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const double w = detail::weight(csi, k);
    const double num = w * (1.0 + eta(k)) * b.signal(k) * chi(k) * chi(k);
    CompensatedSum den;
    den += chi(k) * chi(k) * (b.signal(k) + b.leak(k));
    for (Eigen::Index i = 0; i < K; ++i)
      if (i != k) den += chi(i) * chi(i) * b.interference(i, k);
    const double d = den.value();
    if (num == 0.0) {
      p(k) = 0.0;
    } else if (d == 0.0) {
      p(k) = p_max;
    } else {
      p(k) = std::min(p_max, num / (d * d));
    }
  }
  return p;
}

}  // namespace rdars

#endif  // RDARS_FP_OBJECTIVE_HPP
