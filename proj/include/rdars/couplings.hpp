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

#ifndef RDARS_COUPLINGS_HPP
#define RDARS_COUPLINGS_HPP

#include "rdars/channel.hpp"
#include "rdars/scenario.hpp"

#include <vector>

namespace rdars {

/// Line-of-sight couplings that carry all of the phase dependence of the
/// closed-form rate.
struct LosCouplings {
  std::vector<cdouble> f;  // a_N^H B h_bar_k
  CMatrix g;               // h_bar_k^H A^H A h_bar_i
  CMatrix reflect;         // h_bar_k^H (I - A^H A) h_bar_i
  RMatrix zeta;            // N x K, phase of conj(a_N,n) h_bar_k,n

  /// Phase of conj(h_bar_k,n) h_bar_i,n; the summands of g(k, i).
  static double varsigma(const StatisticalCsi& csi, std::size_t n, std::size_t k,
                         std::size_t i) {
    const auto nn = static_cast<Eigen::Index>(n);
    return std::arg(std::conj(csi.h_bar[k](nn)) * csi.h_bar[i](nn));
  }
};

/// Phase-independent part: g, the reflection overlap and the zeta table.
/// `f` is left at zero; use with_phases() to fill it.
inline LosCouplings los_couplings_static(const StatisticalCsi& csi) {
  const std::size_t K = csi.K();
  const auto Kk = static_cast<Eigen::Index>(K);
  const auto N = static_cast<Eigen::Index>(csi.N());
  LosCouplings c;
  c.f.assign(K, cdouble{0.0, 0.0});
  c.g = csi.g;
  c.reflect = CMatrix::Zero(Kk, Kk);
  c.zeta.resize(N, Kk);
  for (std::size_t k = 0; k < K; ++k) {
    for (Eigen::Index n = 0; n < N; ++n)
      c.zeta(n, static_cast<Eigen::Index>(k)) = std::arg(std::conj(csi.a_N(n)) * csi.h_bar[k](n));
    for (std::size_t i = 0; i < K; ++i) {
      cdouble acc = 0.0;
      for (auto n : csi.indicator.reflecting()) {
        const auto nn = static_cast<Eigen::Index>(n);
        acc += std::conj(csi.h_bar[k](nn)) * csi.h_bar[i](nn);
      }
      c.reflect(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i)) = acc;
    }
  }
  return c;
}

/// f_k = sum over reflecting n of conj(a_N,n) theta_n h_bar_k,n.
inline cdouble reflection_coupling(const StatisticalCsi& csi, const PhaseShifts& phases,
                                   std::size_t k) {
  cdouble acc = 0.0;
  for (auto n : csi.indicator.reflecting()) {
    const auto nn = static_cast<Eigen::Index>(n);
    acc += std::conj(csi.a_N(nn)) * phases.theta(nn) * csi.h_bar[k](nn);
  }
  return acc;
}

inline LosCouplings los_couplings(const StatisticalCsi& csi, const PhaseShifts& phases) {
  if (static_cast<std::size_t>(phases.theta.size()) != csi.N())
    throw StructuralError("los_couplings: phase vector has the wrong length");
  LosCouplings c = los_couplings_static(csi);
  for (std::size_t k = 0; k < csi.K(); ++k) c.f[k] = reflection_coupling(csi, phases, k);
  return c;
}

}  // namespace rdars

#endif  // RDARS_COUPLINGS_HPP
