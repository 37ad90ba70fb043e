// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file spin_coherent.hpp
 * @brief Spin-N/2 coherent states and their contraction to
 *        Weyl-Heisenberg (bosonic) coherent states.
 *
 * Amplitudes are indexed by k = N/2 + M = 0..N:
 *
 *     <k|xi>_N = sqrt(C(N, k)) (1 + |xi|^2)^{-N/2} xi^k
 *
 * With xi = z / sqrt(N) and N -> infinity this tends to the Fock
 * amplitudes of the bosonic coherent state |z>.
 */

#pragma once

#include <cstddef>

#include <Eigen/Core>

#include "relframe/fock.hpp"

namespace relframe {

/// Sphere coordinates of a two-mode state's spin part.
///
/// theta is signed: sin(theta/2) = -|alpha| / sqrt(<N>) and
/// cos(theta/2) = |beta| / sqrt(<N>), so theta <= 0. The stereographic
/// parameter is xi = -tan(theta/2) e^{-i phi_r} = alpha / beta.
struct SpinParams {
  double theta;
  double phi_r;  ///< phi_alpha - phi_beta in (-pi, pi], phases as in mode_amplitude
  cplx xi;
};

/// Throws PreconditionError when beta == 0 (no relative phase).
SpinParams params_from_modes(cplx alpha, cplx beta);

/// State of spin N/2 over k = 0..N.
class SpinVector {
 public:
  SpinVector(std::size_t spin_size, Eigen::VectorXcd amplitudes);

  [[nodiscard]] std::size_t spin_size() const noexcept { return spin_size_; }
  [[nodiscard]] const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] cplx operator[](std::size_t k) const { return amplitudes_[static_cast<Eigen::Index>(k)]; }

 private:
  std::size_t spin_size_;
  Eigen::VectorXcd amplitudes_;
};

/// <u|v>; throws DimensionError on different spin sizes.
cplx inner(const SpinVector& u, const SpinVector& v);

/// |xi>_N, evaluated in log space.
SpinVector spin_coherent(std::size_t spin_size, cplx xi);

/// Bosonic coherent state |z> truncated to k <= N and renormalized.
SpinVector embed_wh(cplx z, std::size_t spin_size);

/// |<embed_wh(z, N) | spin_coherent(N, z / sqrt(N))>|^2. Requires N >= 1.
double contraction_overlap(cplx z, std::size_t spin_size);

}  // namespace relframe
