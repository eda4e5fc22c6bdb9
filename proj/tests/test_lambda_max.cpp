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

#include "rdars/lambda_max.hpp"

#include <gtest/gtest.h>

namespace rdars {
namespace {

TEST(LambdaMax, IdentityAndDiagonal) {
  EXPECT_NEAR(lambda_max(CMatrix::Identity(5, 5)).value, 1.0, 1e-12);
  CMatrix D = CMatrix::Zero(3, 3);
  D.diagonal() << 1.0, 2.0, 3.0;
  const auto b = lambda_max(D);
  EXPECT_NEAR(b.value, 3.0, 1e-9);
  EXPECT_GE(b.upper(), 3.0 - 1e-15);
}

TEST(LambdaMax, RandomHermitianMatchesDenseSolver) {
  Engine eng = make_stream(1, StreamTag::kUser, 0);
  ComplexGaussian cn;
  for (int rep = 0; rep < 5; ++rep) {
    const CMatrix A = cn.matrix(eng, 50, 50);
    const CMatrix H = A + A.adjoint();
    const auto b = lambda_max(H);
    const double exact = dense_lambda_max(H);
    EXPECT_NEAR(b.value, exact, 1e-8 * std::abs(exact));
    EXPECT_GE(b.upper(), exact - 1e-12 * std::abs(exact));
  }
}

TEST(LambdaMax, NegativeDefiniteMatrix) {
  CMatrix D = CMatrix::Zero(3, 3);
  D.diagonal() << -5.0, -2.0, -7.0;
  EXPECT_NEAR(lambda_max(D).value, -2.0, 1e-8);
}

TEST(LambdaMax, PsdOperatorAndFallback) {
  Engine eng = make_stream(2, StreamTag::kUser, 0);
  ComplexGaussian cn;
  const CMatrix U = cn.matrix(eng, 40, 3);
  const auto op = [&U](const CVector& v) -> CVector { return U * (U.adjoint() * v); };
  const double exact = dense_lambda_max(U.adjoint() * U);
  const auto fallback = [&]() { return exact; };
  const auto b = lambda_max_psd(op, 40, (U.adjoint() * U).trace().real(), fallback);
  EXPECT_TRUE(b.converged);
  EXPECT_NEAR(b.value, exact, 1e-8 * exact);

  PowerOptions tiny;
  tiny.max_iter = 1;
  const auto f = lambda_max_psd(op, 40, 1.0, fallback, tiny);
  EXPECT_TRUE(f.used_fallback);
  EXPECT_EQ(f.value, exact);
}

TEST(LambdaMax, EmptyOperator) {
  EXPECT_EQ(lambda_max(CMatrix(0, 0)).value, 0.0);
  EXPECT_THROW(lambda_max(CMatrix(2, 3)), StructuralError);
}

}  // namespace
}  // namespace rdars
