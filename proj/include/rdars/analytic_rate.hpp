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

#ifndef RDARS_ANALYTIC_RATE_HPP
#define RDARS_ANALYTIC_RATE_HPP

#include "rdars/couplings.hpp"
#include "rdars/scenario.hpp"

#include <cmath>
#include <initializer_list>
#include <vector>

namespace rdars {

// Closed-form ergodic-rate building blocks under LMMSE estimation and MRC.
// Every term depends on the phases only through the couplings f_k.

namespace detail {

inline double sum_of(std::initializer_list<double> xs) {
  CompensatedSum s;
  for (double x : xs) s += x;
  return s.value();
}

// Square root of the signal term: L [...] + a [...].
inline double signal_amplitude(std::size_t k, const StatisticalCsi& csi, const LosCouplings& cp) {
  const SystemConfig& cfg = csi.config;
  const auto kk = static_cast<Eigen::Index>(k);
  const double L = static_cast<double>(cfg.L), a = static_cast<double>(cfg.a);
  const double Na = static_cast<double>(cfg.N - cfg.a);
  const double ck = csi.c(kk), dk = csi.d(kk), dl = cfg.delta, ek = cfg.epsilon[k];
  const double f2 = std::norm(cp.f[k]);
  const double bs = L * (f2 * ck * dl * ek + Na * ck * dl * csi.e2(kk) +
                         (Na * ck * (ek + 1.0) + cfg.gamma[k]) * csi.e1(kk));
  const double ris = a * (dk * ek + csi.e4(kk) * dk);
  return bs + ris;
}

inline double bs_amplitude(std::size_t k, const StatisticalCsi& csi, const LosCouplings& cp) {
  const SystemConfig& cfg = csi.config;
  const auto kk = static_cast<Eigen::Index>(k);
  const double L = static_cast<double>(cfg.L);
  const double Na = static_cast<double>(cfg.N - cfg.a);
  const double ck = csi.c(kk), dl = cfg.delta, ek = cfg.epsilon[k];
  return L * (std::norm(cp.f[k]) * ck * dl * ek + Na * ck * dl * csi.e2(kk) +
              (Na * ck * (ek + 1.0) + cfg.gamma[k]) * csi.e1(kk));
}

}  // namespace detail

/// |E[q_hat_k^H q_k]|^2.
inline double signal_term(std::size_t k, const StatisticalCsi& csi, const LosCouplings& cp) {
  const double s = detail::signal_amplitude(k, csi, cp);
  return s * s;
}

/// E[q_hat_k^H blk(sigma_B^2 I, sigma_R^2 I) q_hat_k].
inline double noise_term(std::size_t k, const StatisticalCsi& csi, const LosCouplings& cp) {
  const SystemConfig& cfg = csi.config;
  const auto kk = static_cast<Eigen::Index>(k);
  const double a = static_cast<double>(cfg.a);
  const double ris = a * (csi.d(kk) * cfg.epsilon[k] + csi.e4(kk) * csi.d(kk));
  return cfg.sigma_b2 * detail::bs_amplitude(k, csi, cp) + cfg.sigma_r2 * ris;
}

/// Var[q_hat_k^H q_k].
inline double leak_term(std::size_t k, const StatisticalCsi& csi, const LosCouplings& cp) {
  const SystemConfig& cfg = csi.config;
  const auto kk = static_cast<Eigen::Index>(k);
  const double L = static_cast<double>(cfg.L), a = static_cast<double>(cfg.a);
  const double Na = static_cast<double>(cfg.N - cfg.a);
  const double c = csi.c(kk), d = csi.d(kk), dl = cfg.delta, ek = cfg.epsilon[k];
  const double gk = cfg.gamma[k];
  const double e1 = csi.e1(kk), e2 = csi.e2(kk), e3 = csi.e3(kk), e4 = csi.e4(kk);
  const double nb = std::isinf(csi.pilot_noise_b) ? 0.0 : csi.pilot_noise_b;
  const double nr = std::isinf(csi.pilot_noise_r) ? 0.0 : csi.pilot_noise_r;
  const double f2 = std::norm(cp.f[k]);
  const double e22 = e2 * e2;

  return detail::sum_of({
      L * f2 * c * c * dl * ek *
          (Na * (L * dl + ek + 1.0) * (e22 + 1.0) + 2.0 * (L * e1 + e2) * (e2 + 1.0)),
      L * f2 * c * dl * ek * (gk + (gk + nb) * e22),
      L * L * Na * Na * c * c * dl * dl * e22,
      2.0 * L * Na * Na * c * c * dl * (ek + 1.0) * e22,
      L * Na * Na * c * c * (ek + 1.0) * (ek + 1.0) * e3,
      L * L * Na * c * c * ((2.0 * ek + 1.0) * e1 * e1 + 2.0 * dl * e1 * e2),
      L * Na * c * (c * (2.0 * dl * e22 + (2.0 * ek + 1.0) * e3)),
      L * Na * c * (2.0 * gk + nb) * (dl * e22 + (ek + 1.0) * e3),
      L * gk * (gk + nb) * e3,
      a * d * d * ek,
      a * d * d * ek * e4 * e4,
      a * d * d * e4 * e4,
      a * nr * d * e4 * e4 * (ek + 1.0),
  });
}

/// E[|q_hat_k^H q_i|^2], i != k: interference at user k's combiner from user i.
inline double interference_term(std::size_t k, std::size_t i, const StatisticalCsi& csi,
                                const LosCouplings& cp) {
  const SystemConfig& cfg = csi.config;
  const auto kk = static_cast<Eigen::Index>(k);
  const auto ii = static_cast<Eigen::Index>(i);
  const double L = static_cast<double>(cfg.L), a = static_cast<double>(cfg.a);
  const double Na = static_cast<double>(cfg.N - cfg.a);
  const double dl = cfg.delta;
  const double ck = csi.c(kk), ci = csi.c(ii), dk = csi.d(kk), di = csi.d(ii);
  const double ek = cfg.epsilon[k], ei = cfg.epsilon[i];
  const double gk = cfg.gamma[k], gi = cfg.gamma[i];
  const double e1 = csi.e1(kk), e2 = csi.e2(kk), e3 = csi.e3(kk), e4 = csi.e4(kk);
  const double nb = std::isinf(csi.pilot_noise_b) ? 0.0 : csi.pilot_noise_b;
  const double nr = std::isinf(csi.pilot_noise_r) ? 0.0 : csi.pilot_noise_r;
  const double fk2 = std::norm(cp.f[k]), fi2 = std::norm(cp.f[i]);
  const double e22 = e2 * e2;
  const cdouble cross = std::conj(cp.f[k]) * cp.f[i];
  const cdouble m_ik = cp.reflect(ii, kk);  // h_bar_i^H C h_bar_k
  const cdouble g_ki = cp.g(kk, ii), g_ik = cp.g(ii, kk);
  const double root = std::sqrt(ck * ci * dk * di);

  return detail::sum_of({
      L * L * fk2 * fi2 * ck * ci * dl * dl * ek * ei,
      L * fk2 * ck * dl * ek * (ci * (L * Na * dl + Na * ei + Na + 2.0 * L * e1) + gi),
      L * fi2 * ci * dl * ei *
          (ck * e2 * (L * Na * dl * e2 + Na * ek * e2 + Na * e2 + 2.0 * L * e1) + (gk + nb) * e22),
      L * L * Na * Na * ck * ci * dl * dl * e22,
      L * Na * Na * ck * ci * (dl * (ek + ei + 2.0) * e22 + (ek + 1.0) * (ei + 1.0) * e3),
      L * L * Na * ck * ci * e1 * ((ek + ei + 1.0) * e1 + 2.0 * dl * e2),
      L * L * ck * ci * ek * ei * e1 * std::norm(cp.reflect(kk, ii)) * e1,
      L * L * ck * ci * ek * ei * e1 * 2.0 * dl * std::real(cross * m_ik),
      L * gi * (gk + nb) * e3,
      L * Na * (gk + nb) * ci * (dl * e22 + (ei + 1.0) * e3),
      L * Na * gi * ck * (dl * e22 + (ek + 1.0) * e3),
      dk * di * ek * ei * std::norm(g_ki),
      a * di * (dk * ek + (ei + 1.0) * (dk + nr) * e4 * e4),
      2.0 * std::real(L * root * dl * ek * ei * cross * g_ik),
      2.0 * std::real(L * root * ek * ei * e1 * cp.reflect(kk, ii) * g_ik),
  });
}

enum class PrelogMode {
  kCoherence,  // (tau_c - tau) / tau_c
  kPilot,      // (tau_c - tau) / tau, as printed in the rate expression
};

inline double prelog(std::size_t tau, std::size_t tau_c, PrelogMode mode) {
  const double num = static_cast<double>(tau_c) - static_cast<double>(tau);
  return mode == PrelogMode::kCoherence ? num / static_cast<double>(tau_c)
                                        : num / static_cast<double>(tau);
}

/// Per-user closed-form terms and the resulting SINR and rate.
struct RateBreakdown {
  RVector signal, leak, noise;
  RMatrix interference;  // (k, i): at user k's combiner from user i; zero diagonal
  RVector sinr;
  RVector rate;          // bits/s/Hz
  double weighted_sum = 0.0;
};

/// Terms only (no SINR); phase- and power-independent apart from the couplings.
inline RateBreakdown rate_terms(const StatisticalCsi& csi, const LosCouplings& cp) {
  const std::size_t K = csi.K();
  const auto Kk = static_cast<Eigen::Index>(K);
  RateBreakdown b;
  b.signal.resize(Kk);
  b.leak.resize(Kk);
  b.noise.resize(Kk);
  b.interference = RMatrix::Zero(Kk, Kk);
  for (std::size_t k = 0; k < K; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    b.signal(kk) = signal_term(k, csi, cp);
    b.leak(kk) = leak_term(k, csi, cp);
    b.noise(kk) = noise_term(k, csi, cp);
    for (std::size_t i = 0; i < K; ++i)
      if (i != k) b.interference(kk, static_cast<Eigen::Index>(i)) = interference_term(k, i, csi, cp);
  }
  return b;
}

/// SINR of user k for the power vector p.
inline double sinr(std::size_t k, const RVector& p, const RateBreakdown& b) {
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p(i) < 0.0) throw DomainError("sinr: negative transmit power");
  const auto kk = static_cast<Eigen::Index>(k);
  const double num = p(kk) * b.signal(kk);
  if (num == 0.0) return 0.0;
  CompensatedSum den;
  den += p(kk) * b.leak(kk);
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (i != kk) den += p(i) * b.interference(kk, i);
  den += b.noise(kk);
  return num / den.value();
}

/// prelog * log2(1 + sinr).
inline double rate(double sinr_value, std::size_t tau, std::size_t tau_c,
                   PrelogMode mode = PrelogMode::kCoherence) {
  return prelog(tau, tau_c, mode) * std::log2(1.0 + sinr_value);
}

/// Full breakdown at (phases, p).
inline RateBreakdown evaluate_rate(const StatisticalCsi& csi, const PhaseShifts& phases,
                                   const RVector& p, PrelogMode mode = PrelogMode::kCoherence) {
  if (static_cast<std::size_t>(p.size()) != csi.K())
    throw StructuralError("evaluate_rate: power vector must have K entries");
  RateBreakdown b = rate_terms(csi, los_couplings(csi, phases));
  const auto Kk = static_cast<Eigen::Index>(csi.K());
  b.sinr.resize(Kk);
  b.rate.resize(Kk);
  CompensatedSum ws;
  for (Eigen::Index k = 0; k < Kk; ++k) {
    b.sinr(k) = sinr(static_cast<std::size_t>(k), p, b);
    b.rate(k) = rate(b.sinr(k), csi.config.tau, csi.config.tau_c, mode);
    ws += csi.config.weights[static_cast<std::size_t>(k)] * b.rate(k);
  }
  b.weighted_sum = ws.value();
  return b;
}

}  // namespace rdars

#endif  // RDARS_ANALYTIC_RATE_HPP
