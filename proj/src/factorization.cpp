// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#include "relframe/factorization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "relframe/errors.hpp"
#include "relframe/phase_twirl.hpp"
#include "relframe/spin_coherent.hpp"

namespace relframe {

namespace {

constexpr double kMinRetainedNorm = 1.0 - 1e-8;

long double log_add_exp(long double a, long double b) {
  if (a == -std::numeric_limits<long double>::infinity()) return b;
  if (b == -std::numeric_limits<long double>::infinity()) return a;
  const long double hi = std::max(a, b);
  return hi + std::log1p(std::exp(-std::abs(a - b)));
}

// Unnormalized product grid: block N holds c_N * embed_wh(z, N) restricted
// to the grid. Its squared norm is the mass the grid retains.
TwoModeState product_grid(double mean_n, double phi_beta, cplx z, Cutoffs cutoffs) {
  const std::size_t n1_max = cutoffs.n1_max;
  const std::size_t n2_max = cutoffs.n2_max;
  const std::size_t n_total = n1_max + n2_max;
  constexpr long double neg_inf = -std::numeric_limits<long double>::infinity();

  // log |c_N|
  std::vector<long double> log_c(n_total + 1, neg_inf);
  if (mean_n == 0.0) {
    log_c[0] = 0.0L;
  } else {
    const long double log_mean = std::log(static_cast<long double>(mean_n));
    for (std::size_t n = 0; n <= n_total; ++n) {
      log_c[n] = -0.5L * mean_n + 0.5L * static_cast<long double>(n) * log_mean - 0.5L * special::log_factorial(n);
    }
  }

  // log |wh_k| up to n_total, and log sum_{j <= N} |wh_j|^2
  const long double r = std::abs(z);
  std::vector<long double> log_wh(n_total + 1, neg_inf);
  std::vector<long double> log_partial(n_total + 1, neg_inf);
  if (r == 0.0L) {
    log_wh[0] = 0.0L;
    std::fill(log_partial.begin(), log_partial.end(), 0.0L);
  } else {
    const long double log_r = std::log(r);
    long double acc = neg_inf;
    for (std::size_t k = 0; k <= n_total; ++k) {
      log_wh[k] = -0.5L * r * r + static_cast<long double>(k) * log_r - 0.5L * special::log_factorial(k);
      acc = log_add_exp(acc, 2.0L * log_wh[k]);
      log_partial[k] = acc;
    }
  }

  const double z_phase = std::arg(z);
  Eigen::MatrixXcd grid = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(n1_max) + 1,
                                                 static_cast<Eigen::Index>(n2_max) + 1);
  for (std::size_t k = 0; k <= n1_max; ++k) {
    if (log_wh[k] == neg_inf) continue;
    for (std::size_t m = 0; m <= n2_max; ++m) {
      const std::size_t n = k + m;
      if (log_c[n] == neg_inf) continue;
      const long double log_amp = log_c[n] + log_wh[k] - 0.5L * log_partial[n];
      const double phase = -static_cast<double>(n) * phi_beta + static_cast<double>(k) * z_phase;
      grid(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m)) =
          std::polar(static_cast<double>(std::exp(log_amp)), phase);
    }
  }
  return TwoModeState(std::move(grid));
}

void require_retained(const TwoModeState& s, const char* which, Cutoffs c) {
  const double kept = s.squared_norm();
  if (!(kept >= kMinRetainedNorm)) {
    throw CutoffError(std::string(which) + " keeps only " + std::to_string(kept) + " of its norm at cutoffs (" +
                      std::to_string(c.n1_max) + ", " + std::to_string(c.n2_max) + ")");
  }
}

FactorizationReport compare(cplx alpha, cplx beta, const TwoModeState& exact_raw, const TwoModeState& approx_raw,
                            cplx z) {
  const Cutoffs cutoffs = exact_raw.cutoffs();
  require_retained(exact_raw, "exact state", cutoffs);
  require_retained(approx_raw, "approximate product", cutoffs);
  const auto exact = exact_raw.normalized();
  const auto approx = approx_raw.normalized();

  const cplx ov = exact.amplitudes().cwiseProduct(approx.amplitudes().conjugate()).sum();
  const double mean_n = std::norm(alpha) + std::norm(beta);
  const double a2 = std::norm(alpha);

  FactorizationReport report{};
  report.alpha = alpha;
  report.beta = beta;
  report.pure_fidelity = std::min(1.0, std::norm(ov));
  report.twirled_hs_distance = uniform_twirl_hs_distance(exact, approx);
  report.relative_state_overlap = relative_profile_overlap(exact, z);
  report.cutoffs = cutoffs;
  report.condition_ratio = a2 == 0.0 ? std::numeric_limits<double>::infinity() : mean_n / a2;
  return report;
}

cplx balanced_beta(cplx alpha, double phi_r) {
  const double a = std::abs(alpha);
  const double phi_alpha = a == 0.0 ? 0.0 : mode_phase(alpha);
  return mode_amplitude(a, phi_alpha - phi_r);
}

cplx balanced_target(cplx alpha, double phi_r) {
  return mode_amplitude(std::numbers::sqrt2 * std::abs(alpha), phi_r);
}

}  // namespace

cplx relative_amplitude(cplx alpha, cplx beta) {
  if (beta == cplx{0.0}) throw PreconditionError("relative phase undefined for beta = 0");
  return alpha * std::conj(beta) / std::abs(beta);
}

double relative_profile_overlap(const TwoModeState& state, cplx z) {
  const auto blocks = to_blocks(state);
  double weighted = 0.0;
  double total = 0.0;
  for (std::size_t n = 0; n < blocks.block_count(); ++n) {
    const auto& b = blocks.block(n);
    const double w = std::norm(b.weight);
    if (w == 0.0) continue;
    const auto target = embed_wh(z, n);
    weighted += w * std::norm(b.profile.dot(target.amplitudes()));
    total += w;
  }
  if (total == 0.0) throw PreconditionError("relative_profile_overlap: zero state");
  return std::min(1.0, weighted / total);
}

TwoModeState approx_product(cplx alpha, cplx beta, Cutoffs cutoffs) {
  const cplx z = relative_amplitude(alpha, beta);
  const double mean_n = MeanPhotonNumber::of(alpha, beta).value();
  return product_grid(mean_n, mode_phase(beta), z, cutoffs).normalized();
}

TwoModeState approx_product_balanced(cplx alpha, double phi_r, Cutoffs cutoffs) {
  const cplx beta = balanced_beta(alpha, phi_r);
  const double mean_n = 2.0 * std::norm(alpha);
  return product_grid(mean_n, std::abs(beta) == 0.0 ? 0.0 : mode_phase(beta), balanced_target(alpha, phi_r), cutoffs)
      .normalized();
}

FactorizationReport factorization_fidelity(cplx alpha, cplx beta, std::optional<Cutoffs> cutoffs) {
  const cplx z = relative_amplitude(alpha, beta);
  const Cutoffs c = cutoffs.value_or(Cutoffs::automatic(std::abs(alpha), std::abs(beta)));
  const auto exact = two_mode_coherent(alpha, beta, c);
  const auto approx = product_grid(MeanPhotonNumber::of(alpha, beta).value(), mode_phase(beta), z, c);
  return compare(alpha, beta, exact, approx, z);
}

FactorizationReport factorization_fidelity_balanced(cplx alpha, double phi_r, std::optional<Cutoffs> cutoffs) {
  const double a = std::abs(alpha);
  const cplx beta = balanced_beta(alpha, phi_r);
  const cplx z = balanced_target(alpha, phi_r);
  const Cutoffs c =
      cutoffs.value_or(Cutoffs{std::max(auto_cutoff(a), auto_cutoff(std::numbers::sqrt2 * a)), auto_cutoff(a)});
  const auto exact = two_mode_coherent(alpha, beta, c);
  const auto approx = product_grid(2.0 * a * a, a == 0.0 ? 0.0 : mode_phase(beta), z, c);
  return compare(alpha, beta, exact, approx, z);
}

std::vector<FactorizationReport> sweep_fidelity(cplx alpha, std::span<const double> beta_magnitudes, double phi_beta,
                                                std::optional<Cutoffs> cutoffs) {
  if (beta_magnitudes.empty()) throw PreconditionError("sweep_fidelity: empty |beta| list");
  std::vector<FactorizationReport> out;
  out.reserve(beta_magnitudes.size());
  for (double b : beta_magnitudes) {
    if (!std::isfinite(b) || b <= 0.0) throw PreconditionError("sweep_fidelity: |beta| must be positive");
  }
  for (double b : beta_magnitudes) out.push_back(factorization_fidelity(alpha, mode_amplitude(b, phi_beta), cutoffs));
  return out;
}

}  // namespace relframe
