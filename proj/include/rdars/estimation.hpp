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

#ifndef RDARS_ESTIMATION_HPP
#define RDARS_ESTIMATION_HPP

#include "rdars/channel.hpp"
#include "rdars/couplings.hpp"
#include "rdars/scenario.hpp"

#include <optional>
#include <vector>

namespace rdars {

/// Pilot training block. Columns of S are orthonormal user pilots.
struct PilotBlock {
  CMatrix S;                // tau x K
  double p_p = 0.0;         // W
  std::size_t tau = 0;
  CMatrix Y;                // (L + a) x tau
  std::vector<CVector> y;   // per-user projections
};

/// First K columns of the unitary tau-point DFT.
inline CMatrix dft_pilots(std::size_t tau, std::size_t K) {
  if (K > tau) throw DomainError("dft_pilots: need tau >= K");
  const auto T = static_cast<Eigen::Index>(tau);
  CMatrix S(T, static_cast<Eigen::Index>(K));
  const double scale = 1.0 / std::sqrt(static_cast<double>(tau));
  for (Eigen::Index k = 0; k < S.cols(); ++k)
    for (Eigen::Index t = 0; t < T; ++t)
      S(t, k) = std::polar(scale, -2.0 * kPi * static_cast<double>(t * k) / static_cast<double>(tau));
  return S;
}

/// Receiver noise over the pilot block; rows 0..L-1 have power sigma_b2, the
/// remaining a rows sigma_r2.
inline CMatrix sample_pilot_noise(std::size_t L, std::size_t a, std::size_t tau, double sigma_b2,
                                  double sigma_r2, Engine& eng) {
  ComplexGaussian cn;
  CMatrix Nz = cn.matrix(eng, static_cast<Eigen::Index>(L + a), static_cast<Eigen::Index>(tau));
  Nz.topRows(static_cast<Eigen::Index>(L)) *= std::sqrt(sigma_b2);
  Nz.bottomRows(static_cast<Eigen::Index>(a)) *= std::sqrt(sigma_r2);
  return Nz;
}

/// Y_p = sqrt(tau p_p) Q S^H + noise.
inline CMatrix receive_pilots(const EquivalentChannel& eq, const CMatrix& S, double p_p,
                              const CMatrix& noise) {
  if (S.cols() != eq.Q.cols() || noise.rows() != eq.Q.rows() || noise.cols() != S.rows())
    throw StructuralError("receive_pilots: dimension mismatch");
  if (p_p < 0.0) throw DomainError("receive_pilots: negative pilot power");
  return std::sqrt(static_cast<double>(S.rows()) * p_p) * eq.Q * S.adjoint() + noise;
}

/// y_k = Y_p s_k / sqrt(tau p_p).
inline std::vector<CVector> project_pilots(const CMatrix& Y, const CMatrix& S, double p_p,
                                           std::size_t tau) {
  if (!(p_p > 0.0)) throw DomainError("project_pilots: pilot power must be positive");
  if (Y.cols() != S.rows() || static_cast<std::size_t>(S.rows()) != tau)
    throw StructuralError("project_pilots: dimension mismatch");
  const double scale = 1.0 / std::sqrt(static_cast<double>(tau) * p_p);
  std::vector<CVector> y;
  y.reserve(static_cast<std::size_t>(S.cols()));
  for (Eigen::Index k = 0; k < S.cols(); ++k) y.emplace_back(scale * (Y * S.col(k)));
  return y;
}

/// Closed-form mean of q_k and the covariances needed by the estimator.
struct PriorMoments {
  CVector mean;    // E[q_k]
  CMatrix cov_qy;  // C[q_k, y_k] = C[q_k, q_k]
  CMatrix cov_yy;  // C[y_k, y_k]
};

/// Mean of q_k for coupling value f_k.
inline CVector equivalent_mean(const StatisticalCsi& csi, std::size_t k, cdouble f_k) {
  const auto L = static_cast<Eigen::Index>(csi.L());
  const auto a = static_cast<Eigen::Index>(csi.a());
  const auto kk = static_cast<Eigen::Index>(k);
  const double eps = csi.config.epsilon[k];
  CVector mu(L + a);
  mu.head(L) = (std::sqrt(csi.c(kk) * csi.config.delta * eps) * f_k) * csi.a_L;
  const double sr = std::sqrt(csi.d(kk) * eps);
  for (Eigen::Index r = 0; r < a; ++r)
    mu(L + r) = sr * csi.h_bar[k](static_cast<Eigen::Index>(csi.indicator.connected()[static_cast<std::size_t>(r)]));
  return mu;
}

inline PriorMoments prior_moments(const StatisticalCsi& csi, std::size_t k,
                                          const PhaseShifts& phases) {
  const auto L = static_cast<Eigen::Index>(csi.L());
  const auto a = static_cast<Eigen::Index>(csi.a());
  const auto kk = static_cast<Eigen::Index>(k);
  PriorMoments st;
  st.mean = equivalent_mean(csi, k, reflection_coupling(csi, phases, k));
  st.cov_qy = CMatrix::Zero(L + a, L + a);
  st.cov_qy.topLeftCorner(L, L) = csi.a1(kk) * csi.a_L * csi.a_L.adjoint();
  st.cov_qy.topLeftCorner(L, L).diagonal().array() += csi.a2(kk);
  st.cov_qy.bottomRightCorner(a, a).diagonal().setConstant(csi.d(kk));
  st.cov_yy = st.cov_qy;
  st.cov_yy.topLeftCorner(L, L).diagonal().array() += csi.pilot_noise_b;
  st.cov_yy.bottomRightCorner(a, a).diagonal().array() += csi.pilot_noise_r;
  return st;
}

/// Dense LMMSE gain blkdiag(a3 a_L a_L^H + a4 I, a5 I); for checks only.
inline CMatrix lmmse_gain(const StatisticalCsi& csi, std::size_t k) {
  const auto L = static_cast<Eigen::Index>(csi.L());
  const auto a = static_cast<Eigen::Index>(csi.a());
  const auto kk = static_cast<Eigen::Index>(k);
  CMatrix G = CMatrix::Zero(L + a, L + a);
  G.topLeftCorner(L, L) = csi.a3(kk) * csi.a_L * csi.a_L.adjoint();
  G.topLeftCorner(L, L).diagonal().array() += csi.a4(kk);
  G.bottomRightCorner(a, a).diagonal().setConstant(csi.a5(kk));
  return G;
}

struct ChannelEstimate {
  std::vector<CVector> q_hat;
  std::vector<CVector> error;  // q - q_hat; empty without the true channel
};

/// q_hat = mean + gain (y - mean), with the BS block applied through its
/// rank-one-plus-identity form in O(L).
inline CVector lmmse_estimate_user(const CVector& y, const StatisticalCsi& csi, std::size_t k,
                                   cdouble f_k) {
  const auto L = static_cast<Eigen::Index>(csi.L());
  const auto a = static_cast<Eigen::Index>(csi.a());
  const auto kk = static_cast<Eigen::Index>(k);
  if (y.size() != L + a) throw StructuralError("lmmse_estimate: observation has the wrong length");
  CVector mu = equivalent_mean(csi, k, f_k);
  CVector x = y - mu;
  const cdouble proj = csi.a_L.dot(x.head(L));  // a_L^H x_B
  CVector q = mu;
  q.head(L) += csi.a4(kk) * x.head(L) + (csi.a3(kk) * proj) * csi.a_L;
  q.tail(a) += csi.a5(kk) * x.tail(a);
  return q;
}

inline ChannelEstimate lmmse_estimate(const std::vector<CVector>& y, const StatisticalCsi& csi,
                                      const PhaseShifts& phases,
                                      const EquivalentChannel* truth = nullptr) {
  if (y.size() != csi.K()) throw StructuralError("lmmse_estimate: need one observation per user");
  ChannelEstimate est;
  est.q_hat.reserve(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) {
    est.q_hat.push_back(lmmse_estimate_user(y[k], csi, k, reflection_coupling(csi, phases, k)));
    if (truth) est.error.emplace_back(truth->column(k) - est.q_hat.back());
  }
  return est;
}

}  // namespace rdars

#endif  // RDARS_ESTIMATION_HPP
