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

#ifndef RDARS_PHASE_RGA_HPP
#define RDARS_PHASE_RGA_HPP

#include "rdars/phase_coefficients.hpp"

#include <cmath>
#include <vector>

namespace rdars {

/// Projection of a Euclidean gradient onto the tangent space of the complex
/// circle manifold at x.
inline CVector riemannian_gradient(const CVector& x, const CVector& grad) {
  return grad - (grad.array() * x.array().conjugate()).real().matrix().cast<cdouble>().cwiseProduct(x);
}

/// Entrywise normalization back onto the circle. Entries with |v_i| = 0 keep
/// their previous value.
inline CVector retract(const CVector& v, const CVector& previous) {
  CVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    out(i) = m > 0.0 ? v(i) / m : previous(i);
  }
  return out;
}

/// One ascent step of length rho along the Riemannian gradient.
inline CVector rga_step(const CVector& x, const CVector& grad, double rho) {
  return retract(x + rho * riemannian_gradient(x, grad), x);
}

struct RgaOptions {
  std::size_t t_max = 500;
  double tol = 1e-9;        // relative objective change that ends the loop
  double backtrack = 0.5;   // step shrink factor, in (0, 1)
  double min_step = 1e-12;  // smallest angular step (rad) tried by the line search
};

struct RgaResult {
  CVector x;
  std::vector<double> trace;  // objective after each accepted step, starting point first
  std::size_t iterations = 0;
  bool converged = false;
  bool line_search_exhausted = false;
};

/// Riemannian gradient ascent on the quartic form from the free phases x0.
inline RgaResult rga_solve(const QuarticForm& form, const CVector& x0, const RgaOptions& opt = {}) {
  if (!(opt.backtrack > 0.0 && opt.backtrack < 1.0))
    throw DomainError("rga_solve: backtracking factor must lie in (0, 1)");
  if (x0.size() != form.dim()) throw StructuralError("rga_solve: start vector has the wrong length");
  RgaResult res;
  res.x = x0;
  double f = form.value(res.x);
  res.trace.push_back(f);
  if (form.dim() == 0) {
    res.converged = true;
    return res;
  }
  for (std::size_t t = 0; t < opt.t_max; ++t) {
    const CVector grad = form.gradient(res.x);
    const CVector rg = riemannian_gradient(res.x, grad);
    const double norm = rg.norm();
    if (!(norm > 0.0)) {
      res.converged = true;
      break;
    }
    double rho = 1.0 / norm;
    CVector next = retract(res.x + rho * rg, res.x);
    double f_next = form.value(next);
    while (f_next < f) {
      rho *= opt.backtrack;
      if (rho * norm < opt.min_step) break;
      next = retract(res.x + rho * rg, res.x);
      f_next = form.value(next);
    }
    if (f_next < f) {
      res.line_search_exhausted = true;
      res.converged = true;
      break;
    }
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

#endif  // RDARS_PHASE_RGA_HPP
