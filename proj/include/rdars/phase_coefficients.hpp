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

#ifndef RDARS_PHASE_COEFFICIENTS_HPP
#define RDARS_PHASE_COEFFICIENTS_HPP

#include "rdars/analytic_rate.hpp"
#include "rdars/fp_objective.hpp"

#include <cmath>
#include <random>
#include <string>
#include <vector>

namespace rdars {

// With the duals and powers held fixed, f_q is a polynomial in the phases of
// degree four. Its phase dependence enters only through the couplings
// f_k = w_k^H theta, taken over the reflecting elements, so
//
//   f_q = const + sum_k lin_k |f_k|^2 + sum_(a,b) coef_ab |f_a|^2 |f_b|^2
//         + sum_(k != i) 2 Re{ cross_ki f_k^* f_i }.
//
// The scalars below are the expansion of the closed-form terms in |f_k|^2,
// |f_k|^2 |f_i|^2 and f_k^* f_i. Everything phase-independent comes from
// evaluating the closed-form terms with f = 0.

/// Expansion coefficients of the closed-form terms in the couplings.
struct PhaseCoefficients {
  // Signal amplitude: sqrt(E_signal) = s1 |f_k|^2 + s2.
  RVector s1, s2;
  // Leakage and noise: l0 + l1 |f_k|^2 and n0 + n1 |f_k|^2.
  RVector l0, l1, n0, n1;
  // Interference at user k from user i:
  //   u0 + u1 |f_k|^2 |f_i|^2 + u2 |f_k|^2 + u3 |f_i|^2
  //      + 2 Re{ (u5 m_ik + u7 g_ik) f_k^* f_i },
  // with m_ik = h_bar_i^H (I - A^H A) h_bar_k and g_ik = h_bar_i^H A^H A h_bar_k.
  RMatrix u0, u1, u2, u3, u5, u7;
  CMatrix m, g;
  // Columns w_k over the reflecting elements: f_k = w_k^H theta_free.
  CMatrix w;

  /// Complex weight of f_k^* f_i in the interference term.
  cdouble cross(Eigen::Index k, Eigen::Index i) const {
    return u5(k, i) * m(k, i) + u7(k, i) * g(k, i);
  }
  /// C_k = w_k w_k^H.
  CMatrix C(Eigen::Index k) const { return w.col(k) * w.col(k).adjoint(); }
  /// D_ki = w_k w_i^H, so that f_k^* f_i = theta^H D_ki theta.
  CMatrix D(Eigen::Index k, Eigen::Index i) const { return w.col(k) * w.col(i).adjoint(); }
};

/// Coupling vectors restricted to the reflecting elements.
inline CMatrix coupling_vectors(const StatisticalCsi& csi) {
  const auto& refl = csi.indicator.reflecting();
  const auto K = static_cast<Eigen::Index>(csi.K());
  CMatrix w(static_cast<Eigen::Index>(refl.size()), K);
  for (Eigen::Index k = 0; k < K; ++k)
    for (std::size_t r = 0; r < refl.size(); ++r) {
      const auto n = static_cast<Eigen::Index>(refl[r]);
      w(static_cast<Eigen::Index>(r), k) =
          csi.a_N(n) * std::conj(csi.h_bar[static_cast<std::size_t>(k)](n));
    }
  return w;
}

inline PhaseCoefficients extract_coefficients(const StatisticalCsi& csi) {
  const SystemConfig& cfg = csi.config;
  const auto K = static_cast<Eigen::Index>(csi.K());
  const double L = static_cast<double>(cfg.L);
  const double Na = static_cast<double>(cfg.N - cfg.a);
  const double dl = cfg.delta;
  const double nb = std::isinf(csi.pilot_noise_b) ? 0.0 : csi.pilot_noise_b;

  const LosCouplings zero = los_couplings_static(csi);
  PhaseCoefficients pc;
  pc.w = coupling_vectors(csi);
  pc.s1.resize(K);
  pc.s2.resize(K);
  pc.l0.resize(K);
  pc.l1.resize(K);
  pc.n0.resize(K);
  pc.n1.resize(K);
  pc.u0 = pc.u1 = pc.u2 = pc.u3 = pc.u5 = pc.u7 = RMatrix::Zero(K, K);
  pc.m = pc.g = CMatrix::Zero(K, K);

  for (Eigen::Index k = 0; k < K; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const double c = csi.c(k), ek = cfg.epsilon[ku], gk = cfg.gamma[ku];
    const double e1 = csi.e1(k), e2 = csi.e2(k);
    pc.s1(k) = L * c * dl * ek;
    pc.s2(k) = detail::signal_amplitude(ku, csi, zero);
    pc.l0(k) = leak_term(ku, csi, zero);
    pc.l1(k) = L * c * c * dl * ek *
                   (Na * (L * dl + ek + 1.0) * (e2 * e2 + 1.0) + 2.0 * (L * e1 + e2) * (e2 + 1.0)) +
               L * c * dl * ek * (gk + (gk + nb) * e2 * e2);
    pc.n0(k) = noise_term(ku, csi, zero);
    pc.n1(k) = cfg.sigma_b2 * L * c * dl * ek;

    for (Eigen::Index i = 0; i < K; ++i) {
      if (i == k) continue;
      const auto iu = static_cast<std::size_t>(i);
      const double ci = csi.c(i), ei = cfg.epsilon[iu], gi = cfg.gamma[iu];
      pc.u0(k, i) = interference_term(ku, iu, csi, zero);
      pc.u1(k, i) = L * L * c * ci * dl * dl * ek * ei;
      pc.u2(k, i) = L * c * dl * ek * (ci * (L * Na * dl + Na * ei + Na + 2.0 * L * e1) + gi);
      pc.u3(k, i) = L * ci * dl * ei *
                    (c * e2 * (L * Na * dl * e2 + Na * ek * e2 + Na * e2 + 2.0 * L * e1) +
                     (gk + nb) * e2 * e2);
      pc.u5(k, i) = L * L * c * ci * ek * ei * e1 * dl;
      pc.u7(k, i) = L * std::sqrt(c * ci * csi.d(k) * csi.d(i)) * dl * ek * ei;
      pc.m(k, i) = zero.reflect(i, k);
      pc.g(k, i) = zero.g(i, k);
    }
  }
  return pc;
}

/// f_q as an explicit function of the free phases:
///   sum_t coef_t |w_a^H x|^2 |w_b^H x|^2 + x^H K x + constant.
/// K = K3 + K4 + K4^H, where K4 gathers the terms the majorization solver
/// treats as a linear-in-theta^H product and K3 the rest.
struct QuarticForm {
  struct Term {
    double coef;
    Eigen::Index a, b;
  };
  CMatrix w;  // n x K coupling vectors
  std::vector<Term> terms;
  CMatrix K, K3, K4;
  double constant = 0.0;
  std::vector<std::size_t> free_index;  // reflecting element behind each coordinate

  Eigen::Index dim() const { return w.rows(); }

  double value(const CVector& x) const {
    const CVector f = w.adjoint() * x;
    CompensatedSum s;
    s += constant;
    for (const auto& t : terms) s += t.coef * std::norm(f(t.a)) * std::norm(f(t.b));
    s += x.dot(K * x).real();
    return s.value();
  }

  /// Euclidean gradient 2 d/dx^* of value().
  CVector gradient(const CVector& x) const {
    const CVector f = w.adjoint() * x;
    CVector grad = K * x;
    for (const auto& t : terms) {
      grad += (t.coef * std::norm(f(t.b)) * f(t.a)) * w.col(t.a);
      grad += (t.coef * std::norm(f(t.a)) * f(t.b)) * w.col(t.b);
    }
    return 2.0 * grad;
  }

  /// Dense n^2 x n^2 quartic matrix J with value = z^H J z + x^H K x + const,
  /// z = conj(x) kron x. Intended for small n only.
  CMatrix dense_J() const {
    const Eigen::Index n = dim();
    CMatrix J = CMatrix::Zero(n * n, n * n);
    for (const auto& t : terms) {
      const CMatrix P = w.col(t.a) * w.col(t.a).adjoint();
      const CMatrix Q = w.col(t.b) * w.col(t.b).adjoint();
      for (Eigen::Index r = 0; r < n; ++r)
        for (Eigen::Index c = 0; c < n; ++c) J.block(r * n, c * n, n, n) += t.coef * P(c, r) * Q;
    }
    return J;
  }
};

/// Builds the quartic form of f_q for the fixed powers and duals of `s`.
inline QuarticForm build_quartic_form(const StatisticalCsi& csi, const PhaseCoefficients& pc,
                                      const RVector& p, const RVector& eta, const RVector& chi) {
  const auto K = static_cast<Eigen::Index>(csi.K());
  const Eigen::Index n = pc.w.rows();
  QuarticForm q;
  q.w = pc.w;
  q.free_index = csi.indicator.reflecting();
  q.K3 = CMatrix::Zero(n, n);
  q.K4 = CMatrix::Zero(n, n);
  RVector lin = RVector::Zero(K);
  CompensatedSum constant;

  for (Eigen::Index k = 0; k < K; ++k) {
    const double w = detail::weight(csi, k);
    const double c2 = chi(k) * chi(k);
    const double lead = 2.0 * chi(k) * std::sqrt(w * (1.0 + eta(k)) * p(k));
    const double s1 = pc.s1(k), s2 = pc.s2(k);

    constant += w * std::log1p(eta(k)) - w * eta(k);
    constant += lead * s2;
    constant += -c2 * (p(k) * (s2 * s2 + pc.l0(k)) + pc.n0(k));
    lin(k) += lead * s1 - c2 * (p(k) * pc.l1(k) + pc.n1(k));
    if (s1 != 0.0 && c2 * p(k) != 0.0) q.terms.push_back({-c2 * p(k) * s1 * s1, k, k});
    q.K4 += (-c2 * p(k) * s1 * s2) * pc.C(k);

    for (Eigen::Index i = 0; i < K; ++i) {
      if (i == k) continue;
      const double cp = c2 * p(i);
      constant += -cp * pc.u0(k, i);
      lin(k) += -cp * pc.u2(k, i);
      lin(i) += -cp * pc.u3(k, i);
      if (pc.u1(k, i) != 0.0 && cp != 0.0) q.terms.push_back({-cp * pc.u1(k, i), k, i});
      q.K4 += (-cp * pc.cross(k, i)) * pc.D(k, i);
    }
  }
  for (Eigen::Index k = 0; k < K; ++k) q.K3 += lin(k) * pc.C(k);
  q.K = q.K3 + q.K4 + q.K4.adjoint();
  q.constant = constant.value();
  return q;
}

inline QuarticForm build_quartic_form(const StatisticalCsi& csi, const PhaseCoefficients& pc,
                                      const OptimizerState& s) {
  return build_quartic_form(csi, pc, s.p, s.eta, s.chi);
}

/// f_q recomputed from the closed-form terms at the free phases x.
inline double direct_f_q(const StatisticalCsi& csi, const CVector& x, const RVector& p,
                         const RVector& eta, const RVector& chi) {
  const PhaseShifts ph = PhaseShifts::from_free(csi.indicator, x);
  return eval_f_q(csi, p, eta, chi, rate_terms(csi, los_couplings(csi, ph)));
}

/// Relative mismatch between the form and the direct objective at x.
inline double reconstruction_error(const QuarticForm& q, const StatisticalCsi& csi,
                                   const CVector& x, const RVector& p, const RVector& eta,
                                   const RVector& chi) {
  const double direct = direct_f_q(csi, x, p, eta, chi);
  const double compact = q.value(x);
  return std::abs(compact - direct) / std::max({std::abs(direct), std::abs(compact), 1e-300});
}

/// Compares the form against the direct objective at `points` random
/// unit-modulus phase vectors; throws SolverError above `tol`.
inline void verify_quartic_form(const QuarticForm& q, const StatisticalCsi& csi, const RVector& p,
                                const RVector& eta, const RVector& chi, std::uint64_t check_index,
                                int points = 2, double tol = 1e-9) {
  if (q.dim() == 0) return;
  Engine eng = make_stream(0, StreamTag::kFormCheck, check_index);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * kPi);
  for (int t = 0; t < points; ++t) {
    CVector x(q.dim());
    for (Eigen::Index r = 0; r < x.size(); ++r) x(r) = std::polar(1.0, phase(eng));
    const double err = reconstruction_error(q, csi, x, p, eta, chi);
    if (!(err <= tol))
      throw SolverError("phase coefficients do not reproduce the objective (relative error " +
                        std::to_string(err) + ")");
  }
}

}  // namespace rdars

#endif  // RDARS_PHASE_COEFFICIENTS_HPP
