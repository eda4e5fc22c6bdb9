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

#ifndef RDARS_TYPES_HPP
#define RDARS_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>

namespace rdars {

using cdouble = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr cdouble kJ{0.0, 1.0};

/// Invalid numeric input (negative power, distance <= 0, a > N, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Dimension mismatch between objects that must agree.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A solver could not produce a valid result (coefficient identity broken, ...).
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double dbm_to_watts(double dbm) { return db_to_linear(dbm - 30.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

/// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  CompensatedSum& operator+=(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
    return *this;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

// Random streams. Every random object in the library is a pure function of
// (seed, stream tag, index); mt19937_64 is seeded through std::seed_seq.
using Engine = std::mt19937_64;

enum class StreamTag : std::uint64_t {
  kScenario = 1,
  kChannel = 2,
  kPilotNoise = 3,
  kFormCheck = 4,
  kRegression = 5,
  kUser = 6,
};

inline Engine make_stream(std::uint64_t seed, StreamTag tag, std::uint64_t index) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v & 0xffffffffu); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  const auto t = static_cast<std::uint64_t>(tag);
  std::seed_seq seq{lo(seed), hi(seed), lo(t), hi(t), lo(index), hi(index)};
  return Engine(seq);
}

/// CN(0, 1): real and imaginary parts i.i.d. N(0, 1/2).
class ComplexGaussian {
 public:
  cdouble operator()(Engine& eng) {
    const double re = normal_(eng);
    const double im = normal_(eng);
    return {re, im};
  }

  CVector vector(Engine& eng, Eigen::Index n) {
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = (*this)(eng);
    return v;
  }

  CMatrix matrix(Engine& eng, Eigen::Index rows, Eigen::Index cols) {
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
      for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = (*this)(eng);
    return m;
  }

 private:
  std::normal_distribution<double> normal_{0.0, std::sqrt(0.5)};
};

}  // namespace rdars

#endif  // RDARS_TYPES_HPP
