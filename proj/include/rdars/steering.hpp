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

#ifndef RDARS_STEERING_HPP
#define RDARS_STEERING_HPP

#include "rdars/types.hpp"

#include <cstddef>

namespace rdars {

/// Azimuth/elevation pair, radians.
struct Angles {
  double azimuth = 0.0;
  double elevation = 0.0;
};

/// Uniform-planar-array response. Entry x (0-based) has phase
/// 2*pi*(d_s/lambda) * (floor(x/X_y) sin(az) sin(el) + (x mod X_y) cos(el)).
struct SteeringVector {
  CVector entries;
  std::size_t size = 0;
  std::size_t cols = 1;
  Angles angles;
};

/// Phase (radians) of entry `x` of the array response; the exponent without j.
inline double steering_phase(std::size_t x, std::size_t cols, Angles ang, double spacing,
                             double wavelength) {
  const double row = static_cast<double>(x / cols);
  const double col = static_cast<double>(x % cols);
  return 2.0 * kPi * (spacing / wavelength) *
         (row * std::sin(ang.azimuth) * std::sin(ang.elevation) + col * std::cos(ang.elevation));
}

inline SteeringVector steering_vector(std::size_t size, std::size_t cols, double psi_a, double psi_e,
                                      double spacing, double wavelength) {
  if (cols == 0 || (size > 0 && size % cols != 0))
    throw StructuralError("steering_vector: array size must be a multiple of the column count");
  if (wavelength <= 0.0) throw DomainError("steering_vector: wavelength must be positive");
  SteeringVector sv;
  sv.size = size;
  sv.cols = cols;
  sv.angles = {psi_a, psi_e};
  sv.entries.resize(static_cast<Eigen::Index>(size));
  for (std::size_t x = 0; x < size; ++x)
    sv.entries(static_cast<Eigen::Index>(x)) =
        std::polar(1.0, steering_phase(x, cols, sv.angles, spacing, wavelength));
  return sv;
}

}  // namespace rdars

#endif  // RDARS_STEERING_HPP
