// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#include "relframe/spin_coherent.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>
#include <vector>

#include "relframe/errors.hpp"

namespace relframe {

namespace {

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(phi, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

}  // namespace

SpinParams params_from_modes(cplx alpha, cplx beta) {
  if (beta == cplx{0.0}) throw PreconditionError("params_from_modes: beta = 0 leaves the relative phase undefined");
  const double a = std::abs(alpha);
  const double b = std::abs(beta);
  const double phi_alpha = a == 0.0 ? 0.0 : mode_phase(alpha);
  const double phi_r = wrap_phase(phi_alpha - mode_phase(beta));
  const double half_theta = -std::atan2(a, b);
  return {2.0 * half_theta, phi_r, -std::tan(half_theta) * std::polar(1.0, -phi_r)};
}

SpinVector::SpinVector(std::size_t spin_size, Eigen::VectorXcd amplitudes)
    : spin_size_(spin_size), amplitudes_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amplitudes_.size()) != spin_size_ + 1) {
    throw DimensionError("SpinVector needs N + 1 amplitudes");
  }
}

cplx inner(const SpinVector& u, const SpinVector& v) {
  if (u.spin_size() != v.spin_size()) throw DimensionError("inner: spin sizes differ");
  return u.amplitudes().dot(v.amplitudes());
}

SpinVector spin_coherent(std::size_t spin_size, cplx xi) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(spin_size) + 1);
  const long double r = std::abs(xi);
  if (r == 0.0L) {
    amps[0] = 1.0;
    return SpinVector(spin_size, std::move(amps));
  }
  const long double n = static_cast<long double>(spin_size);
  const long double log_r = std::log(r);
  const long double log_norm = -0.5L * n * std::log1p(r * r);
  const double phase = std::arg(xi);
  for (std::size_t k = 0; k <= spin_size; ++k) {
    const long double log_amp =
        0.5L * special::log_binomial(spin_size, k) + log_norm + static_cast<long double>(k) * log_r;
    amps[static_cast<Eigen::Index>(k)] =
        std::polar(static_cast<double>(std::exp(log_amp)), static_cast<double>(k) * phase);
  }
  return SpinVector(spin_size, std::move(amps));
}

SpinVector embed_wh(cplx z, std::size_t spin_size) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(spin_size) + 1);
  const long double r = std::abs(z);
  if (r == 0.0L) {
    amps[0] = 1.0;
    return SpinVector(spin_size, std::move(amps));
  }
  // Work relative to the largest term so that e^{-|z|^2/2} never underflows.
  const long double log_r = std::log(r);
  std::vector<long double> log_amp(spin_size + 1);
  for (std::size_t k = 0; k <= spin_size; ++k) {
    log_amp[k] = static_cast<long double>(k) * log_r - 0.5L * special::log_factorial(k);
  }
  const long double top = *std::max_element(log_amp.begin(), log_amp.end());
  const double phase = std::arg(z);
  for (std::size_t k = 0; k <= spin_size; ++k) {
    amps[static_cast<Eigen::Index>(k)] =
        std::polar(static_cast<double>(std::exp(log_amp[k] - top)), static_cast<double>(k) * phase);
  }
  amps /= amps.norm();
  return SpinVector(spin_size, std::move(amps));
}

double contraction_overlap(cplx z, std::size_t spin_size) {
  if (spin_size == 0) throw PreconditionError("contraction_overlap: N must be >= 1");
  const auto target = embed_wh(z, spin_size);
  const auto spin = spin_coherent(spin_size, z / std::sqrt(static_cast<double>(spin_size)));
  return std::min(1.0, std::norm(inner(target, spin)));
}

}  // namespace relframe
