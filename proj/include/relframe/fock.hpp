// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file fock.hpp
 * @brief Truncated single-mode Fock space primitives.
 *
 * Coherent-state amplitudes, Hermitian inner products, pure-vs-mixed
 * fidelity and purity. Factorials are evaluated in log space so that
 * photon numbers in the thousands stay finite.
 */

#pragma once

#include <complex>
#include <cstddef>
#include <string_view>

#include <Eigen/Core>

namespace relframe {

using cplx = std::complex<double>;

/// Index convention used by a state vector or an operator.
enum class Basis {
  fock,            ///< single mode, photon number n = 0..n_max
  block,           ///< two modes, (N, k) triangle with index N(N+1)/2 + k
  lattice_pair,    ///< Z_d x Z_d in relative coordinates, index x_r * d + x_a
  lattice_single,  ///< one Z_d register
};

std::string_view to_string(Basis basis);

namespace special {

/// log(n!) in extended precision.
long double log_factorial(std::size_t n);

/// log C(n, k); requires k <= n.
long double log_binomial(std::size_t n, std::size_t k);

}  // namespace special

/// Mode amplitude |a| e^{-i phase}. All phases in the library use this
/// sign, so `mode_phase(mode_amplitude(m, p)) == p` modulo 2 pi.
cplx mode_amplitude(double magnitude, double phase);

/// Phase phi with a = |a| e^{-i phi}, in (-pi, pi].
double mode_phase(cplx amplitude);

/// Truncation giving a 10-standard-deviation Poisson guard for a coherent
/// amplitude of this magnitude: ceil(|a|^2 + 10|a| + 10).
std::size_t auto_cutoff(double magnitude);

/// A vector tagged with its basis convention.
struct StateVector {
  Basis basis;
  Eigen::VectorXcd amplitudes;
};

/// Single-mode state over photon numbers 0..n_max.
class FockVector {
 public:
  explicit FockVector(Eigen::VectorXcd amplitudes);

  [[nodiscard]] std::size_t n_max() const noexcept {
    return static_cast<std::size_t>(amplitudes_.size()) - 1;
  }
  [[nodiscard]] const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] cplx operator[](std::size_t n) const { return amplitudes_[static_cast<Eigen::Index>(n)]; }
  [[nodiscard]] double squared_norm() const { return amplitudes_.squaredNorm(); }
  [[nodiscard]] StateVector as_state() const { return {Basis::fock, amplitudes_}; }

 private:
  Eigen::VectorXcd amplitudes_;
};

/// Coherent state e^{-|a|^2/2} a^n / sqrt(n!) truncated at n_max. The
/// squared norm is the Poisson CDF at n_max with mean |a|^2.
FockVector coherent_vector(cplx alpha, std::size_t n_max);

/// <u|v>, conjugate-linear in the first argument.
cplx inner(const FockVector& u, const FockVector& v);
cplx inner(const StateVector& u, const StateVector& v);

/// Dense Hermitian matrix over a tagged basis.
class DensityMatrix {
 public:
  DensityMatrix(Basis basis, Eigen::MatrixXcd entries);

  /// |psi><psi|
  static DensityMatrix pure(const StateVector& psi);

  [[nodiscard]] Basis basis() const noexcept { return basis_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return entries_.rows(); }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return entries_; }
  [[nodiscard]] cplx operator()(Eigen::Index i, Eigen::Index j) const { return entries_(i, j); }

  [[nodiscard]] double trace() const;
  /// max |rho - rho^dagger| entrywise
  [[nodiscard]] double hermiticity_error() const;
  /// Smallest eigenvalue of the Hermitian part. O(dim^3); meant for tests.
  [[nodiscard]] double min_eigenvalue() const;

 private:
  Basis basis_;
  Eigen::MatrixXcd entries_;
};

/// Weighted sum of density matrices sharing one basis.
DensityMatrix mix(double w1, const DensityMatrix& rho1, double w2, const DensityMatrix& rho2);

/// <psi|rho|psi> for a normalized psi. Values within 1e-9 outside [0, 1]
/// are clamped; anything further out throws NumericalError.
double fidelity_pure_mixed(const StateVector& psi, const DensityMatrix& rho);

/// Tr(rho^2)
double purity(const DensityMatrix& rho);

/// Frobenius norm of rho - sigma.
double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

}  // namespace relframe
