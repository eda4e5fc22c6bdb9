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

#include "rdars/mc_oracle.hpp"

#include "random_config.hpp"

#include <gtest/gtest.h>

namespace rdars {
namespace {

TEST(Mrc, NoiselessIdentityRecoversSymbols) {
  CMatrix Q = CMatrix::Zero(5, 3);
  Q.topRows(3) = CMatrix::Identity(3, 3);
  CVector x(3);
  x << cdouble(1, 2), cdouble(-1, 0), cdouble(0, 3);
  EXPECT_LT((mrc_combine(Q, Q * x) - x).norm(), 1e-15);
}

TEST(Mrc, SingleUserScalesBySquaredNorm) {
  CVector q(3);
  q << cdouble(1, 1), cdouble(0, 2), cdouble(3, 0);
  const cdouble x(0.5, -0.25);
  const CVector r = mrc_combine(q, q * x);
  EXPECT_NEAR(std::abs(r(0) - q.squaredNorm() * x), 0.0, 1e-14);
}

TEST(Mrc, MatchesNaiveInnerProducts) {
  Engine eng = make_stream(1, StreamTag::kUser, 0);
  ComplexGaussian cn;
  const CMatrix Qh = cn.matrix(eng, 6, 3);
  const CVector y = cn.vector(eng, 6);
  const CVector r = mrc_combine(Qh, y);
  for (Eigen::Index k = 0; k < 3; ++k) {
    cdouble acc = 0.0;
    for (Eigen::Index m = 0; m < 6; ++m) acc += std::conj(Qh(m, k)) * y(m);
    EXPECT_NEAR(std::abs(r(k) - acc), 0.0, 1e-14);
  }
  EXPECT_THROW(mrc_combine(Qh, cn.vector(eng, 5)), StructuralError);
}

bool same_estimate(const McEstimate& a, const McEstimate& b) {
  for (std::size_t k = 0; k < a.signal.size(); ++k) {
    if (a.signal[k].mean != b.signal[k].mean || a.signal[k].std_error != b.signal[k].std_error ||
        a.leak[k].mean != b.leak[k].mean || a.noise[k].mean != b.noise[k].mean ||
        a.sinr[k].mean != b.sinr[k].mean || a.sinr[k].std_error != b.sinr[k].std_error)
      return false;
    for (std::size_t i = 0; i < a.signal.size(); ++i)
      if (a.interference[k][i].mean != b.interference[k][i].mean) return false;
  }
  return true;
}

TEST(McOracle, DeterministicAndThreadCountIndependent) {
  const auto csi = testing::random_csi({4, 2, 4, 2, 1, 2}, 3);
  const RVector p = RVector::Ones(2);
  McOptions opt;
  opt.draws = 3000;
  opt.seed = 17;
  opt.threads = 1;
  const auto a = estimate_sinr_terms(csi, PhaseShifts::ones(4), p, opt);
  const auto b = estimate_sinr_terms(csi, PhaseShifts::ones(4), p, opt);
  opt.threads = 4;
  const auto c = estimate_sinr_terms(csi, PhaseShifts::ones(4), p, opt);
  EXPECT_TRUE(same_estimate(a, b));
  EXPECT_TRUE(same_estimate(a, c));
  opt.seed = 18;
  EXPECT_FALSE(same_estimate(a, estimate_sinr_terms(csi, PhaseShifts::ones(4), p, opt)));
}

TEST(McOracle, StandardErrorFollowsInverseSquareRoot) {
  const auto csi = testing::random_csi({4, 2, 4, 2, 1, 2}, 4);
  const RVector p = RVector::Ones(2);
  std::vector<double> x, y;
  for (std::size_t n : {4000u, 8000u, 16000u, 32000u}) {
    McOptions opt;
    opt.draws = n;
    opt.seed = 5;
    const auto est = estimate_sinr_terms(csi, PhaseShifts::ones(4), p, opt);
    EXPECT_NEAR(est.noise[0].std_error, std::sqrt(est.noise[0].variance / static_cast<double>(n)), 1e-15);
    x.push_back(std::log(static_cast<double>(n)));
    y.push_back(std::log(est.noise[0].std_error));
  }
  const double mx = (x[0] + x[1] + x[2] + x[3]) / 4.0, my = (y[0] + y[1] + y[2] + y[3]) / 4.0;
  double sxy = 0.0, sxx = 0.0;
  for (int j = 0; j < 4; ++j) {
    sxy += (x[j] - mx) * (y[j] - my);
    sxx += (x[j] - mx) * (x[j] - mx);
  }
  EXPECT_NEAR(sxy / sxx, -0.5, 0.05);
}

TEST(McOracle, PerfectCsiSignalIsSquaredChannelEnergy) {
  auto csi = testing::random_csi({3, 1, 4, 2, 1, 1}, 6);
  auto cfg = csi.config;
  cfg.p_pilot = 1e12;
  cfg.sigma_b2 = cfg.sigma_r2 = 1e-12;
  Engine ge = make_stream(6, StreamTag::kUser, 0);
  csi = derive_statistics(cfg, testing::random_geometry(1, ge), csi.indicator);
  const auto ph = PhaseShifts::ones(4);
  const auto st = prior_moments(csi, 0, ph);
  const double energy = st.mean.squaredNorm() + st.cov_qy.trace().real();
  McOptions opt;
  opt.draws = 100000;
  const auto est = estimate_sinr_terms(csi, ph, RVector::Ones(1), opt);
  EXPECT_LE(std::abs(est.signal[0].mean - energy * energy), 3.0 * est.signal[0].std_error);
  EXPECT_LT(est.noise[0].mean, 1e-9);
}

// Independent simulator for the a = N geometry: q_k = [d_k; h_k] drawn and
// estimated entrywise, without the general assembly or estimator code.
struct DasMc {
  std::vector<double> signal, leak;
  std::vector<double> signal_se, leak_se;
};

DasMc das_simulation(const StatisticalCsi& csi, int draws, std::uint64_t seed) {
  const auto& cfg = csi.config;
  const std::size_t K = cfg.K;
  const auto L = static_cast<Eigen::Index>(cfg.L), N = static_cast<Eigen::Index>(cfg.N);
  const double tp = static_cast<double>(cfg.tau) * cfg.p_pilot;
  const double nb = cfg.sigma_b2 / tp, nr = cfg.sigma_r2 / tp;
  Engine eng = make_stream(seed, StreamTag::kRegression, 0);
  ComplexGaussian cn;
  std::vector<std::vector<cdouble>> s(K);
  for (int d = 0; d < draws; ++d) {
    for (std::size_t k = 0; k < K; ++k) {
      const double g = cfg.gamma[k], e = cfg.epsilon[k], dk = cfg.alpha[k] / (e + 1.0);
      const CVector db = std::sqrt(g) * cn.vector(eng, L);
      const CVector mu = std::sqrt(dk * e) * csi.h_bar[k];
      const CVector hr = mu + std::sqrt(dk) * cn.vector(eng, N);
      const CVector yb = db + std::sqrt(nb) * cn.vector(eng, L);
      const CVector yr = hr + std::sqrt(nr) * cn.vector(eng, N);
      const CVector qb = (g / (g + nb)) * yb;
      const CVector qr = mu + (dk / (dk + nr)) * (yr - mu);
      s[k].push_back(qb.dot(db) + qr.dot(hr));
    }
  }
  DasMc out;
  for (std::size_t k = 0; k < K; ++k) {
    cdouble m = 0.0;
    for (auto v : s[k]) m += v;
    m /= static_cast<double>(draws);
    double var = 0.0, m4 = 0.0;
    for (auto v : s[k]) {
      var += std::norm(v - m);
      m4 += std::norm(v - m) * std::norm(v - m);
    }
    var /= draws - 1.0;
    out.signal.push_back(std::norm(m) - var / draws);
    out.leak.push_back(var);
    out.signal_se.push_back(std::sqrt(4.0 * std::norm(m) * var / 2.0 / draws));
    out.leak_se.push_back(std::sqrt((m4 / draws - var * var) / draws));
  }
  return out;
}

TEST(McOracle, DasMatchesIndependentSimulator) {
  const auto csi = testing::random_csi({3, 1, 3, 1, 3, 2}, 7);
  McOptions opt;
  opt.draws = 100000;
  const auto est = estimate_sinr_terms(csi, PhaseShifts::ones(3), RVector::Ones(2), opt);
  const auto ref = das_simulation(csi, 100000, 8);
  for (std::size_t k = 0; k < 2; ++k) {
    const double ss = std::hypot(est.signal[k].std_error, ref.signal_se[k]);
    const double sl = std::hypot(est.leak[k].std_error, ref.leak_se[k]);
    EXPECT_LE(std::abs(est.signal[k].mean - ref.signal[k]), 3.0 * ss);
    EXPECT_LE(std::abs(est.leak[k].mean - ref.leak[k]), 3.0 * sl);
  }
}

TEST(McOracle, ClosedFormInsideIntervals) {
  const auto csi = testing::random_csi({8, 2, 8, 2, 2, 2}, 9);
  Engine eng = make_stream(9, StreamTag::kUser, 1);
  const auto ph = testing::random_phases(csi.indicator, eng);
  RVector p(2);
  p << 0.8, 0.5;
  McOptions opt;
  opt.draws = 100000;
  opt.seed = 3;
  const auto est = estimate_sinr_terms(csi, ph, p, opt);
  const auto b = evaluate_rate(csi, ph, p);
  const auto z = [](double analytic, const McTerm& t) { return (analytic - t.mean) / t.std_error; };
  for (std::size_t k = 0; k < 2; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    EXPECT_LE(std::abs(z(b.signal(kk), est.signal[k])), 3.0);
    EXPECT_LE(std::abs(z(b.leak(kk), est.leak[k])), 3.0);
    EXPECT_LE(std::abs(z(b.noise(kk), est.noise[k])), 3.0);
    EXPECT_LE(std::abs(z(b.sinr(kk), est.sinr[k])), 3.0);
    EXPECT_LE(std::abs(z(b.interference(kk, 1 - kk), est.interference[k][1 - k])), 3.0);
    EXPECT_LE(std::abs(b.signal(kk) - est.signal[k].mean), 0.01 * b.signal(kk));
  }
}

TEST(McOracle, RejectsInvalidInputs) {
  auto csi = testing::random_csi({4, 2, 4, 2, 1, 2}, 10);
  McOptions opt;
  opt.draws = 1;
  EXPECT_THROW(estimate_sinr_terms(csi, PhaseShifts::ones(4), RVector::Ones(2), opt), DomainError);
  opt.draws = 10;
  EXPECT_THROW(estimate_sinr_terms(csi, PhaseShifts::ones(4), RVector::Ones(3), opt), StructuralError);
  csi.config.p_pilot = 0.0;
  EXPECT_THROW(estimate_sinr_terms(csi, PhaseShifts::ones(4), RVector::Ones(2), opt), DomainError);
}

}  // namespace
}  // namespace rdars
