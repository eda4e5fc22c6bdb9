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

// Hand-reduced rate terms for the three special geometries. Each evaluator
// recomputes its estimator constants from the primitive parameters and only
// keeps the addends that survive the substitution, so it shares no code with
// the general evaluator beyond the input structs.

#ifndef RDARS_TESTS_REDUCED_RATE_HPP
#define RDARS_TESTS_REDUCED_RATE_HPP

#include "rdars/analytic_rate.hpp"

namespace rdars::testing {

struct ReducedTerms {
  RVector signal, leak, noise;
  RMatrix interference;
};

inline ReducedTerms reduced_alloc(std::size_t K) {
  const auto Kk = static_cast<Eigen::Index>(K);
  return {RVector::Zero(Kk), RVector::Zero(Kk), RVector::Zero(Kk), RMatrix::Zero(Kk, Kk)};
}

/// N = a = 0: only the direct link to the L BS antennas.
inline ReducedTerms colocated_terms(const SystemConfig& cfg) {
  const double L = static_cast<double>(cfg.L);
  const double nb = cfg.sigma_b2 / (static_cast<double>(cfg.tau) * cfg.p_pilot);
  auto out = reduced_alloc(cfg.K);
  for (std::size_t k = 0; k < cfg.K; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const double g = cfg.gamma[k];
    const double w = g / (g + nb);  // the estimator shrinkage
    out.signal(kk) = (L * g * w) * (L * g * w);
    out.noise(kk) = cfg.sigma_b2 * L * g * w;
    out.leak(kk) = L * g * (g + nb) * w * w;
    for (std::size_t i = 0; i < cfg.K; ++i)
      if (i != k) out.interference(kk, static_cast<Eigen::Index>(i)) = L * cfg.gamma[i] * (g + nb) * w * w;
  }
  return out;
}

/// a = N: direct link plus N distributed antennas, no reflection.
inline ReducedTerms das_terms(const SystemConfig& cfg, const std::vector<CVector>& h_bar) {
  const double L = static_cast<double>(cfg.L), N = static_cast<double>(cfg.N);
  const double tp = static_cast<double>(cfg.tau) * cfg.p_pilot;
  const double nb = cfg.sigma_b2 / tp, nr = cfg.sigma_r2 / tp;
  auto out = reduced_alloc(cfg.K);
  for (std::size_t k = 0; k < cfg.K; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const double g = cfg.gamma[k], e = cfg.epsilon[k];
    const double d = cfg.alpha[k] / (e + 1.0);
    const double wb = g / (g + nb), wr = d / (d + nr);
    const double amp_b = L * g * wb, amp_r = N * (d * e + wr * d);
    out.signal(kk) = (amp_b + amp_r) * (amp_b + amp_r);
    out.noise(kk) = cfg.sigma_b2 * amp_b + cfg.sigma_r2 * amp_r;
    out.leak(kk) = L * g * (g + nb) * wb * wb + N * d * d * e + N * d * d * e * wr * wr +
                   N * d * d * wr * wr + N * nr * d * wr * wr * (e + 1.0);
    for (std::size_t i = 0; i < cfg.K; ++i) {
      if (i == k) continue;
      const double di = cfg.alpha[i] / (cfg.epsilon[i] + 1.0);
      const double gki = std::norm(h_bar[k].dot(h_bar[i]));  // |h_bar_k^H h_bar_i|^2
      out.interference(kk, static_cast<Eigen::Index>(i)) =
          L * cfg.gamma[i] * (g + nb) * wb * wb + d * di * e * cfg.epsilon[i] * gki +
          N * di * (d * e + (cfg.epsilon[i] + 1.0) * (d + nr) * wr * wr);
    }
  }
  return out;
}

/// a = 0: direct link plus N reflecting elements; f[k] = a_N^H Theta h_bar_k.
inline ReducedTerms ris_terms(const SystemConfig& cfg, const std::vector<cdouble>& f,
                              const std::vector<CVector>& h_bar) {
  const double L = static_cast<double>(cfg.L), N = static_cast<double>(cfg.N);
  const double nb = cfg.sigma_b2 / (static_cast<double>(cfg.tau) * cfg.p_pilot);
  const double dl = cfg.delta;
  const std::size_t K = cfg.K;
  std::vector<double> c(K), e1(K), e2(K), e3(K);
  for (std::size_t k = 0; k < K; ++k) {
    c[k] = cfg.beta * cfg.alpha[k] / ((dl + 1.0) * (cfg.epsilon[k] + 1.0));
    const double p1 = N * c[k] * dl;
    const double p2 = N * c[k] * (cfg.epsilon[k] + 1.0) + cfg.gamma[k];
    const double s = p2 + nb;
    const double r1 = p1 * nb / (s * (s + L * p1));
    const double r2 = p2 / s;
    e1[k] = r1 + r2;
    e2[k] = L * r1 + r2;
    e3[k] = L * r1 * r1 + 2.0 * r1 * r2 + r2 * r2;
  }
  auto out = reduced_alloc(K);
  for (std::size_t k = 0; k < K; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const double ck = c[k], ek = cfg.epsilon[k], gk = cfg.gamma[k];
    const double F = std::norm(f[k]);
    const double amp = L * (F * ck * dl * ek + N * ck * dl * e2[k] + (N * ck * (ek + 1.0) + gk) * e1[k]);
    out.signal(kk) = amp * amp;
    out.noise(kk) = cfg.sigma_b2 * amp;
    const double q = e2[k] * e2[k];
    out.leak(kk) =
        L * F * ck * ck * dl * ek * (N * (L * dl + ek + 1.0) * (q + 1.0) + 2.0 * (L * e1[k] + e2[k]) * (e2[k] + 1.0)) +
        L * F * ck * dl * ek * (gk + (gk + nb) * q) + L * L * N * N * ck * ck * dl * dl * q +
        2.0 * L * N * N * ck * ck * dl * (ek + 1.0) * q + L * N * N * ck * ck * (ek + 1.0) * (ek + 1.0) * e3[k] +
        L * L * N * ck * ck * ((2.0 * ek + 1.0) * e1[k] * e1[k] + 2.0 * dl * e1[k] * e2[k]) +
        L * N * ck * (ck * (2.0 * dl * q + (2.0 * ek + 1.0) * e3[k]) + (2.0 * gk + nb) * (dl * q + (ek + 1.0) * e3[k])) +
        L * gk * (gk + nb) * e3[k];
    for (std::size_t i = 0; i < K; ++i) {
      if (i == k) continue;
      const double ci = c[i], ei = cfg.epsilon[i], gi = cfg.gamma[i];
      const double Fi = std::norm(f[i]);
      const cdouble m_ki = h_bar[k].dot(h_bar[i]);  // h_bar_k^H h_bar_i
      out.interference(kk, static_cast<Eigen::Index>(i)) =
          L * L * F * Fi * ck * ci * dl * dl * ek * ei +
          L * F * ck * dl * ek * (ci * (L * N * dl + N * ei + N + 2.0 * L * e1[k]) + gi) +
          L * Fi * ci * dl * ei * (ck * e2[k] * (L * N * dl * e2[k] + N * ek * e2[k] + N * e2[k] + 2.0 * L * e1[k]) + (gk + nb) * q) +
          L * L * N * N * ck * ci * dl * dl * q +
          L * N * N * ck * ci * (dl * (ek + ei + 2.0) * q + (ek + 1.0) * (ei + 1.0) * e3[k]) +
          L * L * N * ck * ci * e1[k] * ((ek + ei + 1.0) * e1[k] + 2.0 * dl * e2[k]) +
          L * L * ck * ci * ek * ei * e1[k] *
              (std::norm(m_ki) * e1[k] + 2.0 * dl * std::real(std::conj(f[k]) * f[i] * std::conj(m_ki))) +
          L * gi * (gk + nb) * e3[k] +
          L * N * ((gk + nb) * ci * (dl * q + (ei + 1.0) * e3[k]) + gi * ck * (dl * q + (ek + 1.0) * e3[k]));
    }
  }
  return out;
}

}  // namespace rdars::testing

#endif  // RDARS_TESTS_REDUCED_RATE_HPP
