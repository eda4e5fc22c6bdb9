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

#ifndef RDARS_LAMBDA_MAX_HPP
#define RDARS_LAMBDA_MAX_HPP

#include "rdars/types.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <functional>

namespace rdars {

/// Largest eigenvalue of a Hermitian operator, with the residual of the
/// returned Ritz pair. For a Hermitian operator some eigenvalue lies within
/// `residual` of `value`, so value + residual is the bound used by the
/// majorization solver.
struct EigenBound {
  double value = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
  bool converged = false;
  bool used_fallback = false;

  double upper() const { return value + residual; }
};

struct PowerOptions {
  double tol = 1e-10;  // residual relative to the operator scale
  std::size_t max_iter = 20000;
};

using HermitianOperator = std::function<CVector(const CVector&)>;

/// Power iteration on op + shift * I from the normalized all-ones vector.
/// `shift` must make the shifted operator positive semidefinite.
inline EigenBound power_iteration(const HermitianOperator& op, Eigen::Index n, double shift,
                                  double scale, const PowerOptions& opt = {}) {
  EigenBound out;
  if (n == 0) {
    out.converged = true;
    return out;
  }
  CVector x = CVector::Ones(n) / std::sqrt(static_cast<double>(n));
  const double floor = opt.tol * std::max(scale, 1e-300);
  for (std::size_t it = 1; it <= opt.max_iter; ++it) {
    const CVector y = op(x) + shift * x;
    const double mu = x.dot(y).real();
    const double res = (y - mu * x).norm();
    out.value = mu - shift;
    out.residual = res;
    out.iterations = it;
    if (res <= floor) {
      out.converged = true;
      return out;
    }
    const double ny = y.norm();
    if (!(ny > 0.0)) {  // x lies in the null space of the shifted operator
      out.converged = true;
      return out;
    }
    x = y / ny;
  }
  return out;
}

/// Exact largest eigenvalue of a dense Hermitian matrix.
inline double dense_lambda_max(const CMatrix& M) {
  if (M.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(M, Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

/// Largest eigenvalue of a dense Hermitian matrix by power iteration with a
/// Gershgorin shift; falls back to the dense solver if the iteration stalls.
inline EigenBound lambda_max(const CMatrix& M, const PowerOptions& opt = {}) {
  if (M.rows() != M.cols()) throw StructuralError("lambda_max: matrix must be square");
  // Smallest shift that moves every Gershgorin disc into the right half-line.
  double lowest = 0.0, radius = 0.0;
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    const double off = M.row(i).cwiseAbs().sum() - std::abs(M(i, i));
    lowest = std::min(lowest, M(i, i).real() - off);
    radius = std::max(radius, std::abs(M(i, i)) + off);
  }
  EigenBound b = power_iteration([&M](const CVector& v) -> CVector { return M * v; }, M.rows(),
                                 -lowest, radius, opt);
  if (!b.converged) {
    b.value = dense_lambda_max(M);
    b.residual = 0.0;
    b.used_fallback = true;
  }
  return b;
}

/// Largest eigenvalue of a positive semidefinite operator given as a matvec,
/// with `fallback` computing it exactly when the iteration stalls.
inline EigenBound lambda_max_psd(const HermitianOperator& op, Eigen::Index n, double scale,
                                 const std::function<double()>& fallback,
                                 const PowerOptions& opt = {}) {
  EigenBound b = power_iteration(op, n, 0.0, scale, opt);
  if (!b.converged) {
    b.value = fallback();
    b.residual = 0.0;
    b.used_fallback = true;
  }
  return b;
}

}  // namespace rdars

#endif  // RDARS_LAMBDA_MAX_HPP
