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

#ifndef RDARS_MC_ORACLE_HPP
#define RDARS_MC_ORACLE_HPP

#include "rdars/analytic_rate.hpp"
#include "rdars/channel.hpp"
#include "rdars/estimation.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace rdars {

/// r = Q_hat^H y.
inline CVector mrc_combine(const CMatrix& Q_hat, const CVector& y) {
  if (Q_hat.rows() != y.size()) throw StructuralError("mrc_combine: dimension mismatch");
  return Q_hat.adjoint() * y;
}

/// Sample estimate of one expectation.
struct McTerm {
  double mean = 0.0;
  double variance = 0.0;   // per-draw variance; n * se^2 for derived quantities
  double std_error = 0.0;  // sqrt(variance / draws)

  /// Two-sided normal-approximation interval (99% by default).
  double ci_low(double z = 2.5758293035489) const { return mean - z * std_error; }
  double ci_high(double z = 2.5758293035489) const { return mean + z * std_error; }
};

struct McEstimate {
  std::size_t draws = 0;
  std::vector<cdouble> inner_mean;            // E[q_hat_k^H q_k]
  std::vector<McTerm> signal;                 // |E[q_hat_k^H q_k]|^2
  std::vector<McTerm> second_moment;          // E[|q_hat_k^H q_k|^2]
  std::vector<McTerm> leak;                   // variance of q_hat_k^H q_k
  std::vector<McTerm> noise;                  // E[q_hat_k^H blk(...) q_hat_k]
  std::vector<std::vector<McTerm>> interference;  // (k, i)
  std::vector<McTerm> sinr;
  std::vector<McTerm> rate;
};

struct McOptions {
  std::size_t draws = 100000;
  std::uint64_t seed = 1;
  std::size_t groups = 32;  // fixed partition used for reduction and the jackknife
  unsigned threads = 0;     // 0: hardware concurrency
  PrelogMode prelog = PrelogMode::kCoherence;
};

namespace detail {

// Raw sums over one contiguous block of draws.
struct McSums {
  std::size_t n = 0;
  std::vector<CompensatedSum> s_re, s_im, s2, s4, nz, nz2;
  std::vector<CompensatedSum> in, in2;  // K*K, row-major (k, i)

  explicit McSums(std::size_t K = 0)
      : s_re(K), s_im(K), s2(K), s4(K), nz(K), nz2(K), in(K * K), in2(K * K) {}

  void merge(const McSums& o) {
    n += o.n;
    const auto add = [](std::vector<CompensatedSum>& a, const std::vector<CompensatedSum>& b) {
      for (std::size_t j = 0; j < a.size(); ++j) a[j] += b[j].value();
    };
    add(s_re, o.s_re);
    add(s_im, o.s_im);
    add(s2, o.s2);
    add(s4, o.s4);
    add(nz, o.nz);
    add(nz2, o.nz2);
    add(in, o.in);
    add(in2, o.in2);
  }
};

// One draw: channels, pilots, estimation and the per-draw products.
inline void mc_draw(const StatisticalCsi& csi, const PhaseShifts& phases, const CMatrix& S,
                    const std::vector<cdouble>& f, std::uint64_t seed, std::uint64_t index,
                    McSums& acc) {
  const SystemConfig& cfg = csi.config;
  const std::size_t K = cfg.K;
  Engine ch = make_stream(seed, StreamTag::kChannel, index);
  const ChannelRealization real = sample_channels(csi, ch, index);
  const EquivalentChannel eq = assemble_equivalent(real, csi.indicator, phases);
  Engine pn = make_stream(seed, StreamTag::kPilotNoise, index);
  const CMatrix noise = sample_pilot_noise(cfg.L, cfg.a, cfg.tau, cfg.sigma_b2, cfg.sigma_r2, pn);
  const CMatrix Y = receive_pilots(eq, S, cfg.p_pilot, noise);
  const std::vector<CVector> y = project_pilots(Y, S, cfg.p_pilot, cfg.tau);

  const auto L = static_cast<Eigen::Index>(cfg.L);
  const auto a = static_cast<Eigen::Index>(cfg.a);
  CMatrix Qh(eq.Q.rows(), eq.Q.cols());
  for (std::size_t k = 0; k < K; ++k)
    Qh.col(static_cast<Eigen::Index>(k)) = lmmse_estimate_user(y[k], csi, k, f[k]);
  const CMatrix G = Qh.adjoint() * eq.Q;  // G(k, i) = q_hat_k^H q_i

  for (std::size_t k = 0; k < K; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    const cdouble s = G(kk, kk);
    const double m2 = std::norm(s);
    acc.s_re[k] += s.real();
    acc.s_im[k] += s.imag();
    acc.s2[k] += m2;
    acc.s4[k] += m2 * m2;
    const double nzk = cfg.sigma_b2 * Qh.col(kk).head(L).squaredNorm() +
                       cfg.sigma_r2 * Qh.col(kk).tail(a).squaredNorm();
    acc.nz[k] += nzk;
    acc.nz2[k] += nzk * nzk;
    for (std::size_t i = 0; i < K; ++i) {
      if (i == k) continue;
      const double v = std::norm(G(kk, static_cast<Eigen::Index>(i)));
      acc.in[k * K + i] += v;
      acc.in2[k * K + i] += v * v;
    }
  }
  ++acc.n;
}

// Derived quantities from merged sums.
struct McPoint {
  std::vector<double> signal, leak, sinr;
};

inline McPoint mc_point(const McSums& t, const RVector& p, std::size_t K) {
  McPoint out;
  const double n = static_cast<double>(t.n);
  for (std::size_t k = 0; k < K; ++k) {
    const cdouble m(t.s_re[k].value() / n, t.s_im[k].value() / n);
    const double raw_var = t.s2[k].value() / n - std::norm(m);
    const double leak = n > 1.0 ? raw_var * n / (n - 1.0) : raw_var;
    // |mean|^2 overestimates |E s|^2 by Var(s)/n.
    const double signal = std::norm(m) - leak / n;
    out.signal.push_back(signal);
    out.leak.push_back(leak);
  }
  for (std::size_t k = 0; k < K; ++k) {
    const auto kk = static_cast<Eigen::Index>(k);
    double den = p(kk) * out.leak[k] + t.nz[k].value() / n;
    for (std::size_t i = 0; i < K; ++i)
      if (i != k) den += p(static_cast<Eigen::Index>(i)) * t.in[k * K + i].value() / n;
    const double num = p(kk) * out.signal[k];
    out.sinr.push_back(num == 0.0 ? 0.0 : num / den);
  }
  return out;
}

inline McTerm linear_term(const CompensatedSum& s1, const CompensatedSum& s2, std::size_t n) {
  McTerm t;
  const double nn = static_cast<double>(n);
  t.mean = s1.value() / nn;
  const double var = n > 1 ? (s2.value() - nn * t.mean * t.mean) / (nn - 1.0) : 0.0;
  t.variance = std::max(var, 0.0);
  t.std_error = std::sqrt(t.variance / nn);
  return t;
}

}  // namespace detail

/// Monte Carlo estimate of every expectation in the SINR. Draw d uses the
/// streams (seed, channel, d) and (seed, pilot noise, d); draws are split
/// into `groups` contiguous blocks that are reduced in index order, so the
/// result does not depend on the thread count.
inline McEstimate estimate_sinr_terms(const StatisticalCsi& csi, const PhaseShifts& phases,
                                      const RVector& p, const McOptions& opt = {}) {
  const SystemConfig& cfg = csi.config;
  const std::size_t K = cfg.K;
  if (opt.draws < 2) throw DomainError("estimate_sinr_terms: need at least two draws");
  if (!(cfg.p_pilot > 0.0)) throw DomainError("estimate_sinr_terms: pilot power must be positive");
  if (static_cast<std::size_t>(p.size()) != K)
    throw StructuralError("estimate_sinr_terms: power vector must have K entries");

  const CMatrix S = dft_pilots(cfg.tau, K);
  std::vector<cdouble> f(K);
  for (std::size_t k = 0; k < K; ++k) f[k] = reflection_coupling(csi, phases, k);

  const std::size_t G = std::clamp<std::size_t>(opt.groups, 2, opt.draws);
  std::vector<detail::McSums> parts(G, detail::McSums(K));
  const auto block_begin = [&](std::size_t g) { return g * opt.draws / G; };

  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t g = next++; g < G; g = next++)
      for (std::size_t d = block_begin(g); d < block_begin(g + 1); ++d)
        detail::mc_draw(csi, phases, S, f, opt.seed, d, parts[g]);
  };
  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, G));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  // Pairwise tree over the blocks in index order.
  std::vector<detail::McSums> level = parts;
  while (level.size() > 1) {
    std::vector<detail::McSums> up;
    for (std::size_t j = 0; j + 1 < level.size(); j += 2) {
      up.push_back(level[j]);
      up.back().merge(level[j + 1]);
    }
    if (level.size() % 2) up.push_back(level.back());
    level = std::move(up);
  }
  const detail::McSums& total = level.front();

  McEstimate est;
  est.draws = total.n;
  const double n = static_cast<double>(total.n);
  const detail::McPoint full = detail::mc_point(total, p, K);

  // Leave-one-block-out replicates for the nonlinear quantities.
  std::vector<detail::McPoint> reps;
  reps.reserve(G);
  for (std::size_t g = 0; g < G; ++g) {
    detail::McSums rest(K);
    for (std::size_t h = 0; h < G; ++h)
      if (h != g) rest.merge(parts[h]);
    reps.push_back(detail::mc_point(rest, p, K));
  }
  const auto jackknife = [&](double value, auto pick) {
    double mean = 0.0;
    for (const auto& r : reps) mean += pick(r);
    mean /= static_cast<double>(G);
    double ss = 0.0;
    for (const auto& r : reps) ss += (pick(r) - mean) * (pick(r) - mean);
    McTerm t;
    t.mean = value;
    t.std_error = std::sqrt(ss * static_cast<double>(G - 1) / static_cast<double>(G));
    t.variance = n * t.std_error * t.std_error;
    return t;
  };

  est.interference.assign(K, std::vector<McTerm>(K));
  for (std::size_t k = 0; k < K; ++k) {
    est.inner_mean.emplace_back(total.s_re[k].value() / n, total.s_im[k].value() / n);
    est.signal.push_back(jackknife(full.signal[k], [k](const detail::McPoint& r) { return r.signal[k]; }));
    est.leak.push_back(jackknife(full.leak[k], [k](const detail::McPoint& r) { return r.leak[k]; }));
    est.sinr.push_back(jackknife(full.sinr[k], [k](const detail::McPoint& r) { return r.sinr[k]; }));
    est.second_moment.push_back(detail::linear_term(total.s2[k], total.s4[k], total.n));
    est.noise.push_back(detail::linear_term(total.nz[k], total.nz2[k], total.n));
    for (std::size_t i = 0; i < K; ++i)
      if (i != k) est.interference[k][i] = detail::linear_term(total.in[k * K + i], total.in2[k * K + i], total.n);

    // Rate through the delta method on the SINR interval.
    const McTerm& s = est.sinr.back();
    McTerm r;
    const double pl = prelog(cfg.tau, cfg.tau_c, opt.prelog);
    r.mean = pl * std::log2(1.0 + std::max(s.mean, 0.0));
    r.std_error = pl * s.std_error / ((1.0 + std::max(s.mean, 0.0)) * std::log(2.0));
    r.variance = n * r.std_error * r.std_error;
    est.rate.push_back(r);
  }
  return est;
}

}  // namespace rdars

#endif  // RDARS_MC_ORACLE_HPP
