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

#include "rdars/phase_coefficients.hpp"

#include "random_config.hpp"
#include "random_state.hpp"

#include <gtest/gtest.h>

namespace rdars {
namespace {

using testing::SmallShape;

const std::vector<SmallShape> kShapes = {
    {4, 2, 6, 2, 2, 2}, {3, 1, 4, 2, 0, 1}, {6, 2, 8, 2, 3, 3},
    {5, 1, 9, 3, 1, 4}, {8, 2, 4, 2, 3, 2}, {4, 2, 12, 3, 0, 3},
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

TEST(PhaseCoefficients, ExpansionMatchesClosedFormTerms) {
  Engine eng = make_stream(1, StreamTag::kUser, 100);
  ComplexGaussian cn;
  for (std::size_t s = 0; s < kShapes.size(); ++s) {
    const auto csi = testing::random_csi(kShapes[s], 20 + s);
    const auto pc = extract_coefficients(csi);
    const auto K = static_cast<Eigen::Index>(csi.K());
    for (Eigen::Index k = 0; k < K; ++k) {
      const auto ku = static_cast<std::size_t>(k);
      LosCouplings cp = los_couplings_static(csi);
      cp.f[ku] = 3.0 * cn(eng);
      const double F = std::norm(cp.f[ku]);
      EXPECT_LT(rel(detail::signal_amplitude(ku, csi, cp), pc.s1(k) * F + pc.s2(k)), 1e-12);
      EXPECT_LT(rel(leak_term(ku, csi, cp), pc.l0(k) + pc.l1(k) * F), 1e-12);
      EXPECT_LT(rel(noise_term(ku, csi, cp), pc.n0(k) + pc.n1(k) * F), 1e-12);
      for (Eigen::Index i = 0; i < K; ++i) {
        if (i == k) continue;
        const auto iu = static_cast<std::size_t>(i);
        LosCouplings pair = los_couplings_static(csi);
        pair.f[ku] = 3.0 * cn(eng);
        pair.f[iu] = 3.0 * cn(eng);
        const double Fk = std::norm(pair.f[ku]), Fi = std::norm(pair.f[iu]);
        const double expect = pc.u0(k, i) + pc.u1(k, i) * Fk * Fi + pc.u2(k, i) * Fk +
                              pc.u3(k, i) * Fi +
                              2.0 * std::real(pc.cross(k, i) * std::conj(pair.f[ku]) * pair.f[iu]);
        EXPECT_LT(rel(interference_term(ku, iu, csi, pair), expect), 1e-12);
      }
    }
  }
}

TEST(PhaseCoefficients, SignalSlopeIsLosProduct) {
  const auto csi = testing::random_csi({4, 2, 6, 2, 2, 2}, 3);
  const auto pc = extract_coefficients(csi);
  for (Eigen::Index k = 0; k < 2; ++k)
    EXPECT_DOUBLE_EQ(pc.s1(k), 4.0 * csi.c(k) * csi.config.delta * csi.config.epsilon[k]);
}

TEST(PhaseCoefficients, CouplingVectorsReproduceF) {
  const auto csi = testing::random_csi({4, 2, 8, 2, 3, 3}, 4);
  Engine eng = make_stream(4, StreamTag::kUser, 1);
  const auto ph = testing::random_phases(csi.indicator, eng);
  const auto pc = extract_coefficients(csi);
  const CVector f = pc.w.adjoint() * ph.free_entries(csi.indicator);
  for (std::size_t k = 0; k < 3; ++k)
    EXPECT_LT(std::abs(f(static_cast<Eigen::Index>(k)) - reflection_coupling(csi, ph, k)), 1e-13);
  for (Eigen::Index k = 0; k < 3; ++k) EXPECT_TRUE(pc.C(k).isApprox(pc.C(k).adjoint()));
}

TEST(QuarticForm, ReproducesObjectiveAtRandomPhases) {
  Engine eng = make_stream(5, StreamTag::kUser, 0);
  double worst = 0.0;
  int count = 0;
  for (std::size_t s = 0; s < kShapes.size(); ++s) {
    const auto csi = testing::random_csi(kShapes[s], 40 + s);
    const auto pc = extract_coefficients(csi);
    for (int rep = 0; rep < 3; ++rep) {
      const auto it = testing::random_iterate(csi, eng);
      const auto q = build_quartic_form(csi, pc, it.p, it.eta, it.chi);
      for (int t = 0; t < 6; ++t) {
        const CVector x = testing::random_unit_modulus(q.dim(), eng);
        worst = std::max(worst, reconstruction_error(q, csi, x, it.p, it.eta, it.chi));
        ++count;
      }
    }
  }
  EXPECT_GE(count, 100);
  EXPECT_LT(worst, 1e-9);
}

TEST(QuarticForm, SplitOfQuadraticPartIsConsistent) {
  const auto csi = testing::random_csi({5, 1, 9, 3, 1, 4}, 6);
  Engine eng = make_stream(6, StreamTag::kUser, 1);
  const auto it = testing::random_iterate(csi, eng);
  const auto q = build_quartic_form(csi, extract_coefficients(csi), it.p, it.eta, it.chi);
  EXPECT_TRUE(q.K.isApprox(q.K.adjoint(), 1e-14));
  EXPECT_TRUE(q.K3.isApprox(q.K3.adjoint(), 1e-14));
  EXPECT_TRUE((q.K3 + q.K4 + q.K4.adjoint()).isApprox(q.K, 1e-14));
}

TEST(QuarticForm, SingleUserHasOneSelfTerm) {
  const auto csi = testing::random_csi({3, 1, 4, 2, 0, 1}, 7);
  Engine eng = make_stream(7, StreamTag::kUser, 1);
  const auto it = testing::random_iterate(csi, eng);
  const auto pc = extract_coefficients(csi);
  const auto q = build_quartic_form(csi, pc, it.p, it.eta, it.chi);
  ASSERT_EQ(q.terms.size(), 1u);
  EXPECT_EQ(q.terms[0].a, 0);
  EXPECT_EQ(q.terms[0].b, 0);
  EXPECT_NEAR(q.terms[0].coef, -it.chi(0) * it.chi(0) * it.p(0) * pc.s1(0) * pc.s1(0), 1e-15);
  EXPECT_TRUE(q.K4.isApprox(-it.chi(0) * it.chi(0) * it.p(0) * pc.s1(0) * pc.s2(0) * pc.C(0)));
}

TEST(QuarticForm, DenseMatrixMatchesStructuredEvaluation) {
  const auto csi = testing::random_csi({4, 2, 6, 2, 2, 2}, 8);
  Engine eng = make_stream(8, StreamTag::kUser, 1);
  const auto it = testing::random_iterate(csi, eng);
  const auto q = build_quartic_form(csi, extract_coefficients(csi), it.p, it.eta, it.chi);
  const CMatrix J = q.dense_J();
  const Eigen::Index n = q.dim();
  EXPECT_TRUE(J.isApprox(J.adjoint(), 1e-13));
  for (int t = 0; t < 5; ++t) {
    const CVector x = testing::random_unit_modulus(n, eng);
    CVector z(n * n);
    for (Eigen::Index r = 0; r < n; ++r) z.segment(r * n, n) = std::conj(x(r)) * x;
    const double val = z.dot(J * z).real() + x.dot(q.K * x).real() + q.constant;
    EXPECT_LT(rel(val, q.value(x)), 1e-12);
    // Gradient from the dense form: 2 (Y x + X^H x + K x), Y = unvec(J z), X = unvec(J^H z).
    const CVector jz = J * z, jhz = J.adjoint() * z;
    const Eigen::Map<const CMatrix> Y(jz.data(), n, n), X(jhz.data(), n, n);
    const CVector dense_grad = 2.0 * (Y * x + X.adjoint() * x + q.K * x);
    EXPECT_LT((dense_grad - q.gradient(x)).norm(), 1e-11 * q.gradient(x).norm());
  }
}

TEST(QuarticForm, GradientMatchesFiniteDifferences) {
  Engine eng = make_stream(9, StreamTag::kUser, 0);
  double worst = 0.0;
  for (int pt = 0; pt < 50; ++pt) {
    const auto& shape = kShapes[static_cast<std::size_t>(pt) % kShapes.size()];
    const auto csi = testing::random_csi(shape, 60 + static_cast<std::uint64_t>(pt));
    const auto it = testing::random_iterate(csi, eng);
    const auto q = build_quartic_form(csi, extract_coefficients(csi), it.p, it.eta, it.chi);
    const CVector x = testing::random_unit_modulus(q.dim(), eng);
    const CVector grad = q.gradient(x);
    CVector fd = CVector::Zero(x.size());
    const double h = 1e-5;
    for (Eigen::Index r = 0; r < x.size(); ++r) {
      for (const cdouble dir : {cdouble(1, 0), kJ}) {
        CVector xp = x, xm = x;
        xp(r) += h * dir;
        xm(r) -= h * dir;
        const double d = (direct_f_q(csi, xp, it.p, it.eta, it.chi) -
                          direct_f_q(csi, xm, it.p, it.eta, it.chi)) /
                         (2.0 * h);
        fd(r) += d * dir;
      }
    }
    worst = std::max(worst, (grad - fd).norm() / grad.norm());
  }
  EXPECT_LT(worst, 1e-6);
}

TEST(QuarticForm, QuadraticOnlyAndZeroForms) {
  Engine eng = make_stream(10, StreamTag::kUser, 0);
  ComplexGaussian cn;
  QuarticForm q;
  q.w = cn.matrix(eng, 4, 2);
  const CMatrix M = cn.matrix(eng, 4, 4);
  q.K = M + M.adjoint();
  const CVector x = testing::random_unit_modulus(4, eng);
  EXPECT_LT((q.gradient(x) - 2.0 * q.K * x).norm(), 1e-13);
  q.K = CMatrix::Zero(4, 4);
  EXPECT_EQ(q.gradient(x).norm(), 0.0);
}

TEST(QuarticForm, VerificationRejectsCorruptedCoefficients) {
  const auto csi = testing::random_csi({4, 2, 6, 2, 2, 2}, 11);
  Engine eng = make_stream(11, StreamTag::kUser, 1);
  const auto it = testing::random_iterate(csi, eng);
  auto pc = extract_coefficients(csi);
  const auto good = build_quartic_form(csi, pc, it.p, it.eta, it.chi);
  EXPECT_NO_THROW(verify_quartic_form(good, csi, it.p, it.eta, it.chi, 0));
  pc.u2(0, 1) *= 1.01;
  const auto bad = build_quartic_form(csi, pc, it.p, it.eta, it.chi);
  EXPECT_THROW(verify_quartic_form(bad, csi, it.p, it.eta, it.chi, 0), SolverError);
}

}  // namespace
}  // namespace rdars
