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

#ifndef RDARS_SCENARIO_HPP
#define RDARS_SCENARIO_HPP

#include "rdars/steering.hpp"
#include "rdars/types.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace rdars {

// ---------------------------------------------------------------------------
// Static scenario parameters. Path losses are linear power gains; the dB/dBm
// forms only exist in ScenarioSpec and the config file.
// ---------------------------------------------------------------------------
struct SystemConfig {
  std::size_t L = 0;        // BS antennas, L = (L / Ly) * Ly
  std::size_t Ly = 1;       // BS array columns
  std::size_t N = 0;        // RDARS elements
  std::size_t Ny = 1;       // RDARS array columns
  std::size_t a = 0;        // connected-mode elements
  std::size_t K = 0;        // users

  double delta = 0.0;               // Rician factor, RDARS-BS
  std::vector<double> epsilon;      // Rician factor, user-RDARS
  double beta = 0.0;                // RDARS-BS path gain
  std::vector<double> alpha;        // user-RDARS path gain
  std::vector<double> gamma;        // user-BS path gain

  double sigma_b2 = 0.0;  // W
  double sigma_r2 = 0.0;  // W
  double p_max = 0.0;     // W
  double p_pilot = 0.0;   // W
  std::size_t tau = 1;
  std::size_t tau_c = 1;
  std::vector<double> weights;

  double element_spacing = 0.5;  // m
  double wavelength = 1.0;       // m

  std::size_t Lx() const { return Ly == 0 ? 0 : L / Ly; }
  std::size_t Nx() const { return Ny == 0 ? 0 : N / Ny; }

  void validate() const {
    auto need = [](bool ok, const std::string& what) {
      if (!ok) throw DomainError("SystemConfig: " + what);
    };
    need(Ly > 0 && L % Ly == 0, "L must be a multiple of Ly");
    need(Ny > 0 && (N == 0 || N % Ny == 0), "N must be a multiple of Ny");
    need(a <= N, "a must not exceed N");
    need(K > 0, "at least one user is required");
    need(tau >= K, "pilot length must be at least K");
    need(tau <= tau_c, "pilot length must not exceed the coherence interval");
    need(epsilon.size() == K && alpha.size() == K && gamma.size() == K && weights.size() == K,
         "per-user vectors must have K entries");
    need(delta >= 0.0 && beta >= 0.0, "delta and beta must be nonnegative");
    for (std::size_t k = 0; k < K; ++k) {
      need(epsilon[k] >= 0.0 && alpha[k] >= 0.0 && gamma[k] >= 0.0,
           "per-user Rician factors and path gains must be nonnegative");
      need(weights[k] >= 0.0, "weights must be nonnegative");
    }
    need(sigma_b2 >= 0.0 && sigma_r2 >= 0.0 && p_max >= 0.0 && p_pilot >= 0.0,
         "powers must be nonnegative");
    const double wsum = std::accumulate(weights.begin(), weights.end(), 0.0);
    need(std::abs(wsum - 1.0) <= 1e-12, "weights must sum to one");
    need(element_spacing > 0.0 && wavelength > 0.0, "spacing and wavelength must be positive");
  }
};

/// Split of the RDARS elements into connected (set A) and reflecting (complement).
/// Indices are 0-based and sorted.
class IndicatorMatrix {
 public:
  IndicatorMatrix() = default;

  IndicatorMatrix(std::size_t n, std::vector<std::size_t> connected) : n_(n), mask_(n, 0) {
    std::sort(connected.begin(), connected.end());
    if (std::adjacent_find(connected.begin(), connected.end()) != connected.end())
      throw DomainError("IndicatorMatrix: duplicate connected index");
    for (auto i : connected) {
      if (i >= n) throw DomainError("IndicatorMatrix: connected index out of range");
      mask_[i] = 1;
    }
    connected_ = std::move(connected);
    for (std::size_t i = 0; i < n; ++i)
      if (!mask_[i]) reflecting_.push_back(i);
  }

  std::size_t size() const { return n_; }
  std::size_t connected_count() const { return connected_.size(); }
  std::size_t reflecting_count() const { return reflecting_.size(); }
  const std::vector<std::size_t>& connected() const { return connected_; }
  const std::vector<std::size_t>& reflecting() const { return reflecting_; }
  bool is_connected(std::size_t i) const { return mask_.at(i) != 0; }

  /// Diagonal of I - A^H A (1 on reflecting elements).
  RVector reflection_mask() const {
    RVector c(static_cast<Eigen::Index>(n_));
    for (std::size_t i = 0; i < n_; ++i) c(static_cast<Eigen::Index>(i)) = mask_[i] ? 0.0 : 1.0;
    return c;
  }

  /// Dense a x N selection matrix A.
  RMatrix selection_matrix() const {
    RMatrix A = RMatrix::Zero(static_cast<Eigen::Index>(connected_.size()), static_cast<Eigen::Index>(n_));
    for (std::size_t r = 0; r < connected_.size(); ++r)
      A(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(connected_[r])) = 1.0;
    return A;
  }

 private:
  std::size_t n_ = 0;
  std::vector<char> mask_;
  std::vector<std::size_t> connected_;
  std::vector<std::size_t> reflecting_;
};

enum class IndicatorPolicy { kTopA, kExplicit };

/// kTopA selects elements {0, ..., a-1}; kExplicit uses `explicit_indices`.
inline IndicatorMatrix build_indicator(std::size_t n, std::size_t a,
                                       IndicatorPolicy policy = IndicatorPolicy::kTopA,
                                       const std::vector<std::size_t>& explicit_indices = {}) {
  if (a > n) throw DomainError("build_indicator: a must not exceed N");
  if (policy == IndicatorPolicy::kExplicit) {
    if (explicit_indices.size() != a)
      throw DomainError("build_indicator: explicit list must contain exactly a indices");
    return IndicatorMatrix(n, explicit_indices);
  }
  std::vector<std::size_t> idx(a);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return IndicatorMatrix(n, std::move(idx));
}

using Point3 = std::array<double, 3>;

inline double distance(const Point3& p, const Point3& q) {
  const double dx = p[0] - q[0], dy = p[1] - q[1], dz = p[2] - q[2];
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

/// Node positions and the (frozen) angles of arrival/departure.
struct Geometry {
  Point3 bs{0.0, 0.0, 10.0};
  Point3 ris{0.0, 0.0, 20.0};
  Point3 user_center{100.0, -20.0, 1.5};
  double user_radius = 10.0;
  std::vector<Point3> users;

  Angles bs_arrival;                 // AoA at the BS from the RDARS
  Angles ris_departure;              // AoD at the RDARS towards the BS
  std::vector<Angles> user_arrival;  // AoA at the RDARS from user k
};

/// Log-distance path loss C0 + 10 * exponent * log10(d) as a linear power gain.
inline double path_loss_linear(double c0_db, double exponent, double d) {
  if (!(d > 0.0)) throw DomainError("path_loss_linear: distance must be positive");
  return db_to_linear(-(c0_db + 10.0 * exponent * std::log10(d)));
}

// ---------------------------------------------------------------------------
// Long-term constants
// ---------------------------------------------------------------------------

/// Per-user scalars of the estimator and rate expressions plus the cached
/// line-of-sight vectors. Computed once per (config, geometry, indicator).
struct StatisticalCsi {
  SystemConfig config;
  IndicatorMatrix indicator;

  // c_k = beta alpha_k / ((delta + 1)(eps_k + 1)),  d_k = alpha_k / (eps_k + 1)
  RVector c, d;
  // Covariance and LMMSE-gain constants.
  RVector a1, a2, a3, a4, a5;
  // e1 = a3 + a4, e2 = L a3 + a4, e3 = L a3^2 + 2 a3 a4 + a4^2, e4 = a5.
  RVector e1, e2, e3, e4;
  // sigma_B^2 / (tau p_p) and sigma_R^2 / (tau p_p); +inf when p_p = 0.
  double pilot_noise_b = 0.0;
  double pilot_noise_r = 0.0;

  CVector a_L;                    // BS response towards the RDARS
  CVector a_N;                    // RDARS response towards the BS
  std::vector<CVector> h_bar;     // RDARS response towards user k

  // Couplings at the reference phase vector (all ones).
  std::vector<cdouble> f_ref;
  CMatrix g;  // g(k, i) = h_bar_k^H A^H A h_bar_i

  std::size_t L() const { return config.L; }
  std::size_t N() const { return config.N; }
  std::size_t a() const { return config.a; }
  std::size_t K() const { return config.K; }
};

namespace detail {

struct EstimatorGains {
  double a3 = 0.0, a4 = 0.0, a5 = 0.0;
};

inline EstimatorGains estimator_gains(double a1, double a2, double dk, double L, double nb,
                                      double nr) {
  EstimatorGains g;
  if (std::isinf(nb)) {
    g.a3 = 0.0;
    g.a4 = 0.0;
  } else {
    const double s = a2 + nb;
    g.a4 = a2 > 0.0 ? a2 / s : 0.0;
    g.a3 = (a1 > 0.0 && nb > 0.0) ? a1 * nb / (s * (s + L * a1)) : 0.0;
  }
  if (std::isinf(nr)) {
    g.a5 = 0.0;
  } else {
    g.a5 = dk > 0.0 ? dk / (dk + nr) : 0.0;
  }
  return g;
}

}  // namespace detail

inline StatisticalCsi derive_statistics(const SystemConfig& cfg, const Geometry& geo,
                                        const IndicatorMatrix& ind) {
  cfg.validate();
  if (ind.size() != cfg.N || ind.connected_count() != cfg.a)
    throw StructuralError("derive_statistics: indicator does not match (N, a)");
  if (geo.user_arrival.size() != cfg.K)
    throw StructuralError("derive_statistics: geometry must carry one arrival angle per user");

  StatisticalCsi s;
  s.config = cfg;
  s.indicator = ind;
  const auto K = static_cast<Eigen::Index>(cfg.K);
  const double L = static_cast<double>(cfg.L);
  const double Nr = static_cast<double>(cfg.N - cfg.a);

  const double tp = static_cast<double>(cfg.tau) * cfg.p_pilot;
  const double inf = std::numeric_limits<double>::infinity();
  s.pilot_noise_b = tp > 0.0 ? cfg.sigma_b2 / tp : inf;
  s.pilot_noise_r = tp > 0.0 ? cfg.sigma_r2 / tp : inf;

  for (RVector* v : {&s.c, &s.d, &s.a1, &s.a2, &s.a3, &s.a4, &s.a5, &s.e1, &s.e2, &s.e3, &s.e4})
    v->setZero(K);

  for (Eigen::Index k = 0; k < K; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    const double eps = cfg.epsilon[uk];
    s.c(k) = cfg.beta * cfg.alpha[uk] / ((cfg.delta + 1.0) * (eps + 1.0));
    s.d(k) = cfg.alpha[uk] / (eps + 1.0);
    s.a1(k) = Nr * s.c(k) * cfg.delta;
    s.a2(k) = Nr * s.c(k) * (eps + 1.0) + cfg.gamma[uk];
    const auto g = detail::estimator_gains(s.a1(k), s.a2(k), s.d(k), L, s.pilot_noise_b,
                                           s.pilot_noise_r);
    s.a3(k) = g.a3;
    s.a4(k) = g.a4;
    s.a5(k) = g.a5;
    s.e1(k) = g.a3 + g.a4;
    s.e2(k) = L * g.a3 + g.a4;
    s.e3(k) = L * g.a3 * g.a3 + 2.0 * g.a3 * g.a4 + g.a4 * g.a4;
    s.e4(k) = g.a5;
  }

  s.a_L = steering_vector(cfg.L, cfg.Ly, geo.bs_arrival.azimuth, geo.bs_arrival.elevation,
                          cfg.element_spacing, cfg.wavelength)
              .entries;
  s.a_N = steering_vector(cfg.N, cfg.Ny, geo.ris_departure.azimuth, geo.ris_departure.elevation,
                          cfg.element_spacing, cfg.wavelength)
              .entries;
  s.h_bar.reserve(cfg.K);
  for (const auto& ang : geo.user_arrival)
    s.h_bar.push_back(steering_vector(cfg.N, cfg.Ny, ang.azimuth, ang.elevation,
                                      cfg.element_spacing, cfg.wavelength)
                          .entries);

  const RVector cmask = ind.reflection_mask();
  s.f_ref.resize(cfg.K);
  s.g = CMatrix::Zero(K, K);
  for (Eigen::Index k = 0; k < K; ++k) {
    const auto uk = static_cast<std::size_t>(k);
    s.f_ref[uk] = s.a_N.dot(cmask.cwiseProduct(s.h_bar[uk]));
    for (Eigen::Index i = 0; i < K; ++i) {
      cdouble acc = 0.0;
      for (auto n : ind.connected())
        acc += std::conj(s.h_bar[uk](static_cast<Eigen::Index>(n))) *
               s.h_bar[static_cast<std::size_t>(i)](static_cast<Eigen::Index>(n));
      s.g(k, i) = acc;
    }
  }
  return s;
}

// ---------------------------------------------------------------------------
// Scenario specification in natural units (what the config file carries).
// ---------------------------------------------------------------------------
struct ScenarioSpec {
  std::size_t L = 128, Ly = 0;  // Ly = 0 picks the most square factorisation
  std::size_t N = 32, Ny = 0;
  std::size_t a = 2;
  std::size_t K = 4;
  std::vector<std::size_t> connected_indices;  // empty -> top-a policy

  double rician_ris_bs = 10.0;
  std::vector<double> rician_user_ris{1.0};  // one value for all users, or K values

  double c0_db = 30.0;
  double exponent_user_ris = 2.3;
  double exponent_ris_bs = 2.0;
  double exponent_user_bs = 3.5;

  Point3 bs{0.0, 0.0, 10.0};
  Point3 ris{0.0, 0.0, 20.0};
  Point3 user_center{100.0, -20.0, 1.5};
  double user_radius = 10.0;

  double p_max_dbm = 0.0;
  double pilot_power_dbm = 0.0;
  bool pilot_follows_p_max = true;
  double noise_bs_dbm = -80.0;
  double noise_ris_dbm = -80.0;
  std::size_t tau = 8;
  std::size_t tau_c = 196;

  std::vector<double> weights;  // empty -> inversely proportional to gamma_k
  double spacing_wavelengths = 0.5;
  double wavelength = 0.1;

  std::uint64_t seed = 1;
};

struct Scenario {
  SystemConfig config;
  Geometry geometry;
  IndicatorMatrix indicator;
};

/// Largest divisor of n not exceeding sqrt(n); the column count of a near-square UPA.
inline std::size_t square_columns(std::size_t n) {
  if (n == 0) return 1;
  std::size_t best = 1;
  for (std::size_t c = 1; c * c <= n; ++c)
    if (n % c == 0) best = c;
  return best;
}

/// Draws the user drop and the LoS angles from `spec.seed` and freezes them.
/// User positions and angles depend on the seed and K only, so grids over
/// L, N, a or p_max share the same drop.
inline Scenario build_scenario(const ScenarioSpec& spec) {
  if (spec.K == 0) throw DomainError("build_scenario: K must be positive");
  Scenario sc;
  Geometry& geo = sc.geometry;
  geo.bs = spec.bs;
  geo.ris = spec.ris;
  geo.user_center = spec.user_center;
  geo.user_radius = spec.user_radius;

  Engine eng = make_stream(spec.seed, StreamTag::kScenario, 0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const auto angle = [&] { return 2.0 * kPi * unit(eng); };
  geo.bs_arrival = {angle(), angle()};
  geo.ris_departure = {angle(), angle()};
  for (std::size_t k = 0; k < spec.K; ++k) {
    const double r = spec.user_radius * std::sqrt(unit(eng));
    const double phi = 2.0 * kPi * unit(eng);
    geo.users.push_back({spec.user_center[0] + r * std::cos(phi),
                         spec.user_center[1] + r * std::sin(phi), spec.user_center[2]});
    geo.user_arrival.push_back({angle(), angle()});
  }

  SystemConfig& cfg = sc.config;
  cfg.L = spec.L;
  cfg.Ly = spec.Ly ? spec.Ly : square_columns(spec.L);
  cfg.N = spec.N;
  cfg.Ny = spec.Ny ? spec.Ny : square_columns(spec.N);
  cfg.a = spec.a;
  cfg.K = spec.K;
  cfg.delta = spec.rician_ris_bs;
  if (spec.rician_user_ris.size() == 1) {
    cfg.epsilon.assign(spec.K, spec.rician_user_ris.front());
  } else if (spec.rician_user_ris.size() == spec.K) {
    cfg.epsilon = spec.rician_user_ris;
  } else {
    throw DomainError("build_scenario: rician_user_ris must have 1 or K entries");
  }
  cfg.beta = path_loss_linear(spec.c0_db, spec.exponent_ris_bs, distance(spec.ris, spec.bs));
  for (const auto& u : geo.users) {
    cfg.alpha.push_back(path_loss_linear(spec.c0_db, spec.exponent_user_ris, distance(u, spec.ris)));
    cfg.gamma.push_back(path_loss_linear(spec.c0_db, spec.exponent_user_bs, distance(u, spec.bs)));
  }
  cfg.sigma_b2 = dbm_to_watts(spec.noise_bs_dbm);
  cfg.sigma_r2 = dbm_to_watts(spec.noise_ris_dbm);
  cfg.p_max = dbm_to_watts(spec.p_max_dbm);
  cfg.p_pilot = spec.pilot_follows_p_max ? cfg.p_max : dbm_to_watts(spec.pilot_power_dbm);
  cfg.tau = spec.tau;
  cfg.tau_c = spec.tau_c;
  if (spec.weights.empty()) {
    double total = 0.0;
    for (double g : cfg.gamma) total += 1.0 / g;
    for (double g : cfg.gamma) cfg.weights.push_back((1.0 / g) / total);
  } else {
    if (spec.weights.size() != spec.K) throw DomainError("build_scenario: weights need K entries");
    const double total = std::accumulate(spec.weights.begin(), spec.weights.end(), 0.0);
    if (!(total > 0.0)) throw DomainError("build_scenario: weights must have a positive sum");
    for (double w : spec.weights) cfg.weights.push_back(w / total);
  }
  cfg.wavelength = spec.wavelength;
  cfg.element_spacing = spec.spacing_wavelengths * spec.wavelength;
  cfg.validate();

  sc.indicator = spec.connected_indices.empty()
                     ? build_indicator(spec.N, spec.a)
                     : build_indicator(spec.N, spec.a, IndicatorPolicy::kExplicit,
                                       spec.connected_indices);
  return sc;
}

}  // namespace rdars

#endif  // RDARS_SCENARIO_HPP
