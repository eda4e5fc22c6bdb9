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

#ifndef RDARS_PHASE_MM_HPP
#define RDARS_PHASE_MM_HPP

#include "rdars/lambda_max.hpp"
#include "rdars/phase_coefficients.hpp"

#include <cmath>
#include <vector>

namespace rdars {

// Two-tier majorization-minimization on g0 = -f_q.
//
// In the lifted variable [x; z] with z = x kron conj(x),
//   g0(x) = [x; z]^H blkdiag(-K3, -J1) [x; z] - 2 Re{x^H K4 x} + const,
// where -J1 = sum_t (-coef_t) u_t u_t^H and u_t = w_a kron conj(w_b) is
// positive semidefinite. The first tier replaces the block-diagonal matrix by
// its largest eigenvalue, the second tier does the same for the remaining
// quadratic in x, and the resulting linear surrogate is minimized entrywise.

/// How the unit-modulus minimizer of 2 Re{x^H f} is written.
enum class MmUpdateRule {
  kOpposePhase,     // x_i = -f_i / |f_i|, the exact minimizer
  kConjugatePhase,  // x_i = exp(-j arg f_i), as printed in the source derivation
};

/// Which eigenvalue bound is used in the second tier.
enum class MmSecondTierBound {
  kSurrogate,  // largest eigenvalue of the tier-one quadratic, recomputed per iterate
  kLifted,     // reuse the tier-one bound
};

struct MmOptions {
  std::size_t t_max = 2000;
  double tol = 1e-9;
  MmUpdateRule rule = MmUpdateRule::kOpposePhase;
  MmSecondTierBound second_tier = MmSecondTierBound::kSurrogate;
  // Capped so a near-degenerate top pair hands over to the dense solver quickly.
  PowerOptions power{1e-10, 1000};
};

/// Quartic form plus the tier-one eigenvalue bound.
struct MmForm {
  QuarticForm q;
  EigenBound lambda_k3;  // largest eigenvalue of -K3
  EigenBound lambda_j1;  // largest eigenvalue of -J1
  double lambda1 = 0.0;  // bound used for the lifted block-diagonal matrix

  Eigen::Index dim() const { return q.dim(); }

  /// -J1 applied to a lifted vector of length n^2.
  CVector apply_neg_j1(const CVector& z) const {
    const Eigen::Index n = dim();
    CVector out = CVector::Zero(n * n);
    for (const auto& t : q.terms) {
      const CVector u = lifted_vector(t);
      out += (-t.coef * u.dot(z)) * u;
    }
    return out;
  }

  CVector lifted_vector(const QuarticForm::Term& t) const {
    const Eigen::Index n = dim();
    CVector u(n * n);
    for (Eigen::Index r = 0; r < n; ++r) u.segment(r * n, n) = q.w(r, t.a) * q.w.col(t.b).conjugate();
    return u;
  }

  /// Dense lifted matrix blkdiag(-K3, -J1); small n only.
  CMatrix dense_J2() const {
    const Eigen::Index n = dim();
    CMatrix J2 = CMatrix::Zero(n + n * n, n + n * n);
    J2.topLeftCorner(n, n) = -q.K3;
    for (const auto& t : q.terms) {
      const CVector u = lifted_vector(t);
      J2.bottomRightCorner(n * n, n * n) += -t.coef * u * u.adjoint();
    }
    return J2;
  }

  /// g0 = -f_q on the free phases.
  double g0(const CVector& x) const { return -q.value(x); }
};

inline MmForm build_mm_form(const QuarticForm& q, const PowerOptions& power = {}) {
  MmForm m;
  m.q = q;
  const Eigen::Index n = q.dim();
  m.lambda_k3 = lambda_max(CMatrix(-q.K3), power);
  // Scale of -J1 for the stopping rule: trace = sum of (-coef) |u|^2.
  double trace = 0.0;
  for (const auto& t : q.terms) trace += -t.coef * q.w.col(t.a).squaredNorm() * q.w.col(t.b).squaredNorm();
  const auto gram = [&m]() {
    const auto R = static_cast<Eigen::Index>(m.q.terms.size());
    if (R == 0) return 0.0;
    CMatrix U(m.dim() * m.dim(), R);
    for (Eigen::Index r = 0; r < R; ++r)
      U.col(r) = std::sqrt(-m.q.terms[static_cast<std::size_t>(r)].coef) *
                 m.lifted_vector(m.q.terms[static_cast<std::size_t>(r)]);
    return dense_lambda_max(U.adjoint() * U);
  };
  m.lambda_j1 = lambda_max_psd([&m](const CVector& z) { return m.apply_neg_j1(z); }, n * n, trace,
                               gram, power);
  m.lambda1 = std::max(m.lambda_k3.upper(), m.lambda_j1.upper());
  return m;
}

/// Quantities built at the expansion point x_t.
struct SurrogateState {
  CVector x_t;
  CVector u_tilde;  // (-K3 - lambda1 I) x_t
  CMatrix V_hat;    // unvec of (-J1 - lambda1 I)(x_t kron conj(x_t))
  CMatrix V_tilde;  // V_hat - K4^T
  CMatrix V_bar;    // conj(V_tilde) + V_tilde^T, Hermitian
  EigenBound lambda_v;
  double lambda2 = 0.0;
  CVector f_t;      // (V_bar - lambda2 I) x_t + u_tilde
  double g1_const = 0.0;
  double g2_const = 0.0;
};

inline SurrogateState build_surrogate(const MmForm& m, const CVector& x_t, const MmOptions& opt = {}) {
  const QuarticForm& q = m.q;
  const Eigen::Index n = m.dim();
  const double l1 = m.lambda1;
  SurrogateState s;
  s.x_t = x_t;
  s.u_tilde = -q.K3 * x_t - l1 * x_t;

  const CVector f = q.w.adjoint() * x_t;
  s.V_hat = -l1 * x_t.conjugate() * x_t.transpose();
  for (const auto& t : q.terms)
    s.V_hat += (-t.coef * f(t.a) * std::conj(f(t.b))) * (q.w.col(t.b).conjugate() * q.w.col(t.a).transpose());
  s.V_tilde = s.V_hat - q.K4.transpose();
  s.V_bar = s.V_tilde.conjugate() + s.V_tilde.transpose();

  if (opt.second_tier == MmSecondTierBound::kSurrogate) {
    s.lambda_v = lambda_max(s.V_bar, opt.power);
    s.lambda2 = s.lambda_v.upper();
  } else {
    s.lambda2 = l1;
  }
  s.f_t = s.V_bar * x_t - s.lambda2 * x_t + s.u_tilde;

  // Constants so that g1 and g2 touch g0 at x_t.
  const double nn = static_cast<double>(n);
  double lifted_quad = -x_t.dot(q.K3 * x_t).real();
  for (const auto& t : q.terms) lifted_quad += -t.coef * std::norm(f(t.a)) * std::norm(f(t.b));
  s.g1_const = l1 * (nn + nn * nn) - lifted_quad - q.constant;
  s.g2_const = s.g1_const + l1 * (nn + nn * nn) + s.lambda2 * nn -
               x_t.dot(s.V_bar * x_t).real() + s.lambda2 * nn;
  return s;
}

/// First-tier surrogate: g1(x; x_t) >= g0(x) on the circle, equal at x_t.
inline double g1(const MmForm& m, const SurrogateState& s, const CVector& x) {
  const double nn = static_cast<double>(m.dim());
  return m.lambda1 * (nn + nn * nn) + 2.0 * x.dot(s.u_tilde).real() + x.dot(s.V_bar * x).real() +
         s.g1_const;
}

/// Second-tier surrogate: g2(x; x_t) >= g1(x; x_t) on the circle, equal at x_t.
inline double g2(const MmForm& m, const SurrogateState& s, const CVector& x) {
  (void)m;
  return 2.0 * x.dot(s.f_t).real() + s.g2_const;
}

/// Minimizer of 2 Re{x^H f} over the circle, entrywise.
inline CVector mm_update(const CVector& f, const CVector& previous, MmUpdateRule rule) {
  CVector out(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    const double mag = std::abs(f(i));
    if (!(mag > 0.0)) {
      out(i) = previous(i);
    } else if (rule == MmUpdateRule::kOpposePhase) {
      out(i) = -f(i) / mag;
    } else {
      out(i) = std::polar(1.0, -std::arg(f(i)));
    }
  }
  return out;
}

inline CVector mm_iterate(const MmForm& m, const CVector& x_t, const MmOptions& opt = {}) {
  const SurrogateState s = build_surrogate(m, x_t, opt);
  return mm_update(s.f_t, x_t, opt.rule);
}

struct MmResult {
  CVector x;
  std::vector<double> trace;  // f_q after each iterate, starting point first
  std::size_t iterations = 0;
  std::size_t increases = 0;  // iterates that lowered f_q beyond rounding
  bool converged = false;
};

inline MmResult mm_solve(const MmForm& m, const CVector& x0, const MmOptions& opt = {}) {
  if (x0.size() != m.dim()) throw StructuralError("mm_solve: start vector has the wrong length");
  MmResult res;
  res.x = x0;
  double f = m.q.value(x0);
  res.trace.push_back(f);
  if (m.dim() == 0) {
    res.converged = true;
    return res;
  }
  for (std::size_t t = 0; t < opt.t_max; ++t) {
    const CVector next = mm_iterate(m, res.x, opt);
    const double f_next = m.q.value(next);
    if (f_next < f - 1e-12 * std::max(1.0, std::abs(f))) ++res.increases;
    const double change = std::abs(f_next - f) / std::max(std::abs(f_next), 1e-300);
    res.x = next;
    f = f_next;
    res.trace.push_back(f);
    ++res.iterations;
    if (change < opt.tol) {
      res.converged = true;
      break;
    }
  }
  return res;
}

}  // namespace rdars

#endif  // RDARS_PHASE_MM_HPP
