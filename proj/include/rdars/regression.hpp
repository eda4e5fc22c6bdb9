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

// Random small scenarios with normalised gains. The same list drives the
// Monte Carlo validation, the solver checks and the acceptance binary.

#ifndef RDARS_REGRESSION_HPP
#define RDARS_REGRESSION_HPP

#include "rdars/channel.hpp"
#include "rdars/scenario.hpp"

#include <random>
#include <vector>

namespace rdars {

struct RegressionCase {
  std::size_t index = 0;
  StatisticalCsi csi;
  PhaseShifts phases;  // random unit-modulus on the reflecting elements
  RVector p;           // random powers in [0.1, 1] * p_max
};

namespace detail {

inline std::size_t pick(Engine& eng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(eng);
}

inline std::size_t random_divisor(std::size_t n, Engine& eng) {
  std::vector<std::size_t> divs;
  for (std::size_t d = 1; d <= n; ++d)
    if (n % d == 0) divs.push_back(d);
  return divs[pick(eng, 0, divs.size() - 1)];
}

}  // namespace detail

/// Case `index` of the suite drawn from `seed`. Cases 0..3 pin a = 0, a = N,
/// K = 1 and K = 4 so that every short list covers the special geometries.
inline RegressionCase regression_case(std::uint64_t seed, std::size_t index) {
  Engine eng = make_stream(seed, StreamTag::kRegression, index);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto in = [&](double lo, double hi) { return lo + (hi - lo) * u(eng); };

  SystemConfig cfg;
  cfg.L = detail::pick(eng, 4, 16);
  cfg.Ly = detail::random_divisor(cfg.L, eng);
  cfg.N = detail::pick(eng, 4, 16);
  cfg.Ny = detail::random_divisor(cfg.N, eng);
  cfg.a = detail::pick(eng, 0, cfg.N);
  cfg.K = detail::pick(eng, 1, 4);
  switch (index) {
    case 0: cfg.a = 0; break;
    case 1: cfg.a = cfg.N; break;
    case 2: cfg.K = 1; break;
    case 3: cfg.K = 4; break;
    default: break;
  }
  cfg.delta = in(0.0, 5.0);
  cfg.beta = in(0.2, 1.0);
  for (std::size_t k = 0; k < cfg.K; ++k) {
    cfg.epsilon.push_back(in(0.0, 3.0));
    cfg.alpha.push_back(in(0.2, 1.0));
    cfg.gamma.push_back(in(0.0, 1.0));
  }
  double wsum = 0.0;
  for (std::size_t k = 0; k < cfg.K; ++k) wsum += cfg.weights.emplace_back(in(0.5, 1.5));
  for (double& w : cfg.weights) w /= wsum;
  cfg.sigma_b2 = in(0.05, 0.5);
  cfg.sigma_r2 = in(0.05, 0.5);
  cfg.tau = std::max<std::size_t>(cfg.K, 2);
  cfg.tau_c = 10 * cfg.tau;
  cfg.p_pilot = in(0.5, 5.0) / static_cast<double>(cfg.tau);
  cfg.p_max = 1.0;

  Geometry geo;
  const auto angle = [&] { return Angles{in(0.0, 2.0 * kPi), in(0.0, 2.0 * kPi)}; };
  geo.bs_arrival = angle();
  geo.ris_departure = angle();
  for (std::size_t k = 0; k < cfg.K; ++k) geo.user_arrival.push_back(angle());

  RegressionCase rc;
  rc.index = index;
  rc.csi = derive_statistics(cfg, geo, build_indicator(cfg.N, cfg.a));
  rc.phases = PhaseShifts::ones(cfg.N);
  for (auto i : rc.csi.indicator.reflecting())
    rc.phases.theta(static_cast<Eigen::Index>(i)) = std::polar(1.0, in(0.0, 2.0 * kPi));
  rc.p.resize(static_cast<Eigen::Index>(cfg.K));
  for (Eigen::Index k = 0; k < rc.p.size(); ++k) rc.p(k) = in(0.1, 1.0) * cfg.p_max;
  return rc;
}

inline std::vector<RegressionCase> regression_suite(std::uint64_t seed, std::size_t count) {
  std::vector<RegressionCase> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(regression_case(seed, i));
  return out;
}

}  // namespace rdars

#endif  // RDARS_REGRESSION_HPP
