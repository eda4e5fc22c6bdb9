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

#ifndef RDARS_CHANNEL_HPP
#define RDARS_CHANNEL_HPP

#include "rdars/scenario.hpp"
#include "rdars/types.hpp"

#include <cstdint>
#include <cstdio>
#include <ostream>
#include <vector>

namespace rdars {

/// Phase-shift vector over all N elements. Connected entries are inert and
/// kept at 1; only reflecting entries are free.
struct PhaseShifts {
  CVector theta;

  static PhaseShifts ones(std::size_t n) {
    return {CVector::Ones(static_cast<Eigen::Index>(n))};
  }

  /// Rebuilds a full vector from the free (reflecting) entries.
  static PhaseShifts from_free(const IndicatorMatrix& ind, const CVector& free) {
    if (static_cast<std::size_t>(free.size()) != ind.reflecting_count())
      throw StructuralError("PhaseShifts::from_free: size mismatch");
    PhaseShifts out = ones(ind.size());
    for (std::size_t r = 0; r < ind.reflecting().size(); ++r)
      out.theta(static_cast<Eigen::Index>(ind.reflecting()[r])) = free(static_cast<Eigen::Index>(r));
    return out;
  }

  CVector free_entries(const IndicatorMatrix& ind) const {
    CVector v(static_cast<Eigen::Index>(ind.reflecting_count()));
    for (std::size_t r = 0; r < ind.reflecting().size(); ++r)
      v(static_cast<Eigen::Index>(r)) = theta(static_cast<Eigen::Index>(ind.reflecting()[r]));
    return v;
  }

  /// Largest deviation of |theta_i| from 1 over the reflecting entries.
  double modulus_error(const IndicatorMatrix& ind) const {
    double worst = 0.0;
    for (auto i : ind.reflecting())
      worst = std::max(worst, std::abs(std::abs(theta(static_cast<Eigen::Index>(i))) - 1.0));
    return worst;
  }
};

/// One draw of the physical channels.
struct ChannelRealization {
  CMatrix H;                  // L x N, RDARS -> BS
  std::vector<CVector> h;     // N, user k -> RDARS
  std::vector<CVector> d;     // L, user k -> BS
  std::uint64_t draw = 0;
};

/// Rician H and h_k around the cached line-of-sight responses, Rayleigh d_k.
/// Consumes the engine in a fixed order: H (column-major), then h_k, then d_k.
inline ChannelRealization sample_channels(const StatisticalCsi& csi, Engine& eng,
                                          std::uint64_t draw = 0) {
  const SystemConfig& cfg = csi.config;
  const auto L = static_cast<Eigen::Index>(cfg.L);
  const auto N = static_cast<Eigen::Index>(cfg.N);
  ComplexGaussian cn;
  ChannelRealization r;
  r.draw = draw;

  const double sh = std::sqrt(cfg.beta / (cfg.delta + 1.0));
  r.H = cn.matrix(eng, L, N);
  r.H *= sh;
  r.H.noalias() += (sh * std::sqrt(cfg.delta)) * csi.a_L * csi.a_N.adjoint();

  r.h.reserve(cfg.K);
  r.d.reserve(cfg.K);
  for (std::size_t k = 0; k < cfg.K; ++k) {
    const double eps = cfg.epsilon[k];
    const double s = std::sqrt(cfg.alpha[k] / (eps + 1.0));
    CVector hk = cn.vector(eng, N);
    hk = s * (std::sqrt(eps) * csi.h_bar[k] + hk);
    r.h.push_back(std::move(hk));
  }
  for (std::size_t k = 0; k < cfg.K; ++k) r.d.push_back(std::sqrt(cfg.gamma[k]) * cn.vector(eng, L));
  return r;
}

/// Stacked per-user channels q_k = [H B h_k + d_k ; A h_k] as the columns of Q.
struct EquivalentChannel {
  CMatrix Q;  // (L + a) x K
  std::size_t L = 0;
  std::size_t a = 0;

  auto column(std::size_t k) const { return Q.col(static_cast<Eigen::Index>(k)); }
  auto bs_part(std::size_t k) const {
    return Q.col(static_cast<Eigen::Index>(k)).head(static_cast<Eigen::Index>(L));
  }
  auto ris_part(std::size_t k) const {
    return Q.col(static_cast<Eigen::Index>(k)).tail(static_cast<Eigen::Index>(a));
  }
};

inline EquivalentChannel assemble_equivalent(const ChannelRealization& real,
                                             const IndicatorMatrix& ind,
                                             const PhaseShifts& phases) {
  const auto L = real.H.rows();
  const auto N = real.H.cols();
  const std::size_t K = real.h.size();
  if (static_cast<std::size_t>(N) != ind.size() || phases.theta.size() != N ||
      real.d.size() != K)
    throw StructuralError("assemble_equivalent: dimension mismatch");

  // B h_k = (I - A^H A) Theta h_k, applied entrywise.
  CVector b = phases.theta;
  for (auto i : ind.connected()) b(static_cast<Eigen::Index>(i)) = 0.0;

  const auto a = static_cast<Eigen::Index>(ind.connected_count());
  EquivalentChannel eq;
  eq.L = static_cast<std::size_t>(L);
  eq.a = ind.connected_count();
  eq.Q.resize(L + a, static_cast<Eigen::Index>(K));
  for (std::size_t k = 0; k < K; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    if (real.h[k].size() != N || real.d[k].size() != L)
      throw StructuralError("assemble_equivalent: per-user vector has the wrong length");
    eq.Q.col(kk).head(L).noalias() = real.H * b.cwiseProduct(real.h[k]);
    eq.Q.col(kk).head(L) += real.d[k];
    for (Eigen::Index r = 0; r < a; ++r)
      eq.Q(L + r, kk) = real.h[k](static_cast<Eigen::Index>(ind.connected()[static_cast<std::size_t>(r)]));
  }
  return eq;
}

/// Text dump of a realization: one complex entry per line as "re im", H in
/// row-major order, then every h_k, then every d_k.
inline void dump_realization(std::ostream& os, const ChannelRealization& real) {
  const auto put = [&os](cdouble z) {
    char buf[64];
    const int n = std::snprintf(buf, sizeof buf, "%.17g %.17g\n", z.real(), z.imag());
    os.write(buf, n);
  };
  for (Eigen::Index i = 0; i < real.H.rows(); ++i)
    for (Eigen::Index j = 0; j < real.H.cols(); ++j) put(real.H(i, j));
  for (const auto& v : real.h)
    for (Eigen::Index i = 0; i < v.size(); ++i) put(v(i));
  for (const auto& v : real.d)
    for (Eigen::Index i = 0; i < v.size(); ++i) put(v(i));
}

}  // namespace rdars

#endif  // RDARS_CHANNEL_HPP
