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

#include "rdars/channel.hpp"
#include "rdars/estimation.hpp"
#include "rdars/steering.hpp"

#include "random_config.hpp"

#include <gtest/gtest.h>

#include <sstream>

namespace rdars {
namespace {

TEST(Steering, FirstEntryIsOne) {
  for (double az : {0.3, 1.7, 4.0}) {
    const auto sv = steering_vector(12, 3, az, 2.2, 0.5, 1.0);
    EXPECT_EQ(sv.entries(0), cdouble(1.0, 0.0));
    for (Eigen::Index i = 0; i < 12; ++i) EXPECT_NEAR(std::abs(sv.entries(i)), 1.0, 1e-15);
  }
}

TEST(Steering, BroadsideIsAllOnes) {
  const auto sv = steering_vector(8, 4, 0.0, kPi / 2.0, 0.05, 0.1);
  for (Eigen::Index i = 0; i < 8; ++i) EXPECT_NEAR(std::abs(sv.entries(i) - 1.0), 0.0, 1e-15);
}

TEST(Steering, HandEvaluatedFourElementArray) {
  const auto sv = steering_vector(4, 2, kPi / 2.0, kPi / 2.0, 0.5, 1.0);
  const cdouble expect[4] = {1.0, 1.0, -1.0, -1.0};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(std::abs(sv.entries(i) - expect[i]), 0.0, 1e-15);
}

TEST(Steering, ShapeErrors) {
  EXPECT_THROW(steering_vector(6, 4, 0.1, 0.2, 0.5, 1.0), StructuralError);
  EXPECT_THROW(steering_vector(6, 0, 0.1, 0.2, 0.5, 1.0), StructuralError);
  EXPECT_THROW(steering_vector(6, 3, 0.1, 0.2, 0.5, 0.0), DomainError);
}

TEST(SampleChannels, LargeRicianFactorIsDeterministic) {
  auto csi = testing::random_csi({4, 2, 4, 2, 1, 2}, 3);
  csi.config.delta = 1e14;
  Engine eng = make_stream(1, StreamTag::kChannel, 0);
  const auto r = sample_channels(csi, eng);
  const CMatrix los = std::sqrt(csi.config.beta) * csi.a_L * csi.a_N.adjoint();
  EXPECT_LT((r.H - los).norm(), 1e-6);
}

TEST(SampleChannels, ZeroDirectGainGivesZeroDirectChannel) {
  auto csi = testing::random_csi({4, 2, 4, 2, 1, 2}, 4);
  csi.config.gamma[1] = 0.0;
  Engine eng = make_stream(1, StreamTag::kChannel, 0);
  const auto r = sample_channels(csi, eng);
  EXPECT_EQ(r.d[1].norm(), 0.0);
  EXPECT_GT(r.d[0].norm(), 0.0);
}

TEST(SampleChannels, AveragePowerMatchesPathGain) {
  const auto csi = testing::random_csi({4, 2, 6, 3, 2, 1}, 5);
  const double LN = 24.0;
  CompensatedSum acc;
  const int draws = 100000;
  for (int d = 0; d < draws; ++d) {
    Engine eng = make_stream(9, StreamTag::kChannel, static_cast<std::uint64_t>(d));
    acc += sample_channels(csi, eng).H.squaredNorm() / LN;
  }
  EXPECT_NEAR(acc.value() / draws, csi.config.beta, 0.01 * csi.config.beta);
}

TEST(Assemble, RisCaseHasOnlyBsRows) {
  const auto csi = testing::random_csi({3, 1, 4, 2, 0, 2}, 6);
  Engine eng = make_stream(2, StreamTag::kChannel, 0);
  const auto r = sample_channels(csi, eng);
  Engine pe = make_stream(2, StreamTag::kUser, 0);
  const auto ph = testing::random_phases(csi.indicator, pe);
  const auto eq = assemble_equivalent(r, csi.indicator, ph);
  ASSERT_EQ(eq.Q.rows(), 3);
  for (std::size_t k = 0; k < 2; ++k) {
    const CVector expect = r.H * ph.theta.cwiseProduct(r.h[k]) + r.d[k];
    EXPECT_LT((eq.column(k) - expect).norm(), 1e-13);
  }
}

TEST(Assemble, DasCaseStacksDirectAndDistributed) {
  const auto csi = testing::random_csi({3, 1, 4, 2, 4, 2}, 7);
  Engine eng = make_stream(2, StreamTag::kChannel, 0);
  const auto r = sample_channels(csi, eng);
  const auto eq = assemble_equivalent(r, csi.indicator, PhaseShifts::ones(4));
  ASSERT_EQ(eq.Q.rows(), 7);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(eq.bs_part(k), r.d[k]);
    EXPECT_EQ(eq.ris_part(k), r.h[k]);
  }
}

TEST(Assemble, MatchesNaiveConstruction) {
  const auto ind = build_indicator(3, 1, IndicatorPolicy::kExplicit, {2});
  Engine eng = make_stream(3, StreamTag::kUser, 0);
  ComplexGaussian cn;
  ChannelRealization r;
  r.H = cn.matrix(eng, 2, 3);
  for (int k = 0; k < 2; ++k) {
    r.h.push_back(cn.vector(eng, 3));
    r.d.push_back(cn.vector(eng, 2));
  }
  const auto ph = testing::random_phases(ind, eng);
  const auto eq = assemble_equivalent(r, ind, ph);

  // Naive: B = (I - A^H A) Theta as dense matrices, q = [H B h + d ; A h].
  CMatrix A = CMatrix::Zero(1, 3);
  A(0, 2) = 1.0;
  const CMatrix B = (CMatrix::Identity(3, 3) - A.adjoint() * A) * ph.theta.asDiagonal();
  EXPECT_LT((B * A.adjoint()).norm(), 1e-15);
  for (std::size_t k = 0; k < 2; ++k) {
    CVector q(3);
    q.head(2) = r.H * B * r.h[k] + r.d[k];
    q.tail(1) = A * r.h[k];
    EXPECT_LT((eq.column(k) - q).norm(), 1e-14);
    EXPECT_EQ(eq.Q(2, static_cast<Eigen::Index>(k)), r.h[k](2));
  }
}

TEST(Assemble, DimensionMismatchIsStructural) {
  const auto csi = testing::random_csi({3, 1, 4, 2, 1, 2}, 8);
  Engine eng = make_stream(2, StreamTag::kChannel, 0);
  const auto r = sample_channels(csi, eng);
  EXPECT_THROW(assemble_equivalent(r, csi.indicator, PhaseShifts::ones(5)), StructuralError);
  EXPECT_THROW(assemble_equivalent(r, build_indicator(5, 1), PhaseShifts::ones(5)), StructuralError);
}

// Empirical first and cross-block second moments of q_k against the closed form.
TEST(Assemble, EmpiricalMomentsMatchClosedForm) {
  const auto csi = testing::random_csi({3, 1, 4, 2, 2, 1}, 9);
  Engine pe = make_stream(4, StreamTag::kUser, 0);
  const auto ph = testing::random_phases(csi.indicator, pe);
  const auto stats = prior_moments(csi, 0, ph);
  const int draws = 100000;
  const Eigen::Index M = 5;
  CVector sum = CVector::Zero(M);
  RVector sq_re = RVector::Zero(M), sq_im = RVector::Zero(M);
  std::vector<CVector> samples;
  samples.reserve(draws);
  for (int d = 0; d < draws; ++d) {
    Engine eng = make_stream(21, StreamTag::kChannel, static_cast<std::uint64_t>(d));
    const auto eq = assemble_equivalent(sample_channels(csi, eng), csi.indicator, ph);
    samples.emplace_back(eq.column(0));
  }
  for (const auto& q : samples) sum += q;
  const CVector mean = sum / draws;
  for (const auto& q : samples) {
    sq_re += (q - mean).real().cwiseAbs2();
    sq_im += (q - mean).imag().cwiseAbs2();
  }
  for (Eigen::Index m = 0; m < M; ++m) {
    const double se_re = std::sqrt(sq_re(m) / (draws - 1.0) / draws);
    const double se_im = std::sqrt(sq_im(m) / (draws - 1.0) / draws);
    EXPECT_LE(std::abs(mean(m).real() - stats.mean(m).real()), 3.0 * se_re) << "entry " << m;
    EXPECT_LE(std::abs(mean(m).imag() - stats.mean(m).imag()), 3.0 * se_im) << "entry " << m;
  }
  // Cross-block covariance entries (BS row r, RDARS row c) vanish.
  for (Eigen::Index r = 0; r < 3; ++r)
    for (Eigen::Index c = 3; c < 5; ++c) {
      cdouble acc = 0.0;
      double acc2 = 0.0;
      for (const auto& q : samples) {
        const cdouble v = (q(r) - mean(r)) * std::conj(q(c) - mean(c));
        acc += v;
        acc2 += std::norm(v);
      }
      const cdouble cov = acc / static_cast<double>(draws);
      const double se = std::sqrt((acc2 / draws - std::norm(cov)) / draws);
      EXPECT_LE(std::abs(cov), 3.0 * se) << "entry " << r << "," << c;
    }
}

TEST(Dump, RowMajorThenUsers) {
  ChannelRealization r;
  r.H.resize(2, 2);
  r.H << cdouble(1, 0), cdouble(2, 0), cdouble(3, 0), cdouble(4, 0);
  r.h.push_back(CVector::Constant(2, cdouble(5, 6)));
  r.d.push_back(CVector::Constant(2, cdouble(7, 0)));
  std::ostringstream os;
  dump_realization(os, r);
  EXPECT_EQ(os.str(), "1 0\n2 0\n3 0\n4 0\n5 6\n5 6\n7 0\n7 0\n");
}

}  // namespace
}  // namespace rdars
