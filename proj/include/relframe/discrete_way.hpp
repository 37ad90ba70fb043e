// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file discrete_way.hpp
 * @brief Observed system plus apparatus on the cyclic lattice Z_d x Z_d.
 *
 * Relative and collective coordinates x_r = x1 - x2, x_a = x1 + x2 (mod d).
 * For odd d the map (x1, x2) -> (x_r, x_a) is a bijection because 2 is
 * invertible mod d. A global displacement by X adds X to both positions,
 * leaving x_r fixed and moving x_a by 2X; it plays the role of
 * e^{-i X Pi} for the conserved total momentum Pi.
 */

#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "relframe/fock.hpp"

namespace relframe {

enum class LatticeView {
  product,   ///< amplitudes(x1, x2)
  relative,  ///< amplitudes(x_r, x_a)
};

/// Unit-norm state of two Z_d registers, d odd and >= 3.
class QuditPairState {
 public:
  /// Throws PreconditionError for even or small d, non-square grids, or a
  /// norm off by more than 1e-12.
  QuditPairState(Eigen::MatrixXcd amplitudes, LatticeView view);

  static QuditPairState basis_product(int d, int x1, int x2);
  static QuditPairState basis_relative(int d, int x_r, int x_a);
  /// |psi_r> (x) |psi_a> in the relative view; factors are normalized here.
  static QuditPairState product(const Eigen::VectorXcd& psi_r, const Eigen::VectorXcd& psi_a);

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(amplitudes_.rows()); }
  [[nodiscard]] LatticeView view() const noexcept { return view_; }
  [[nodiscard]] const Eigen::MatrixXcd& amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] cplx amplitude(int i, int j) const { return amplitudes_(i, j); }
  /// Flattened relative-view vector, index x_r * d + x_a.
  [[nodiscard]] StateVector as_state() const;

 private:
  Eigen::MatrixXcd amplitudes_;
  LatticeView view_;
};

/// Nonnegative residue of x modulo d.
int mod(long x, int d);

/// Multiplicative inverse of 2 modulo odd d.
int half_mod(int d);

QuditPairState to_relative_basis(const QuditPairState& s);
QuditPairState from_relative_basis(const QuditPairState& s);

/// |x1, x2> -> |x1 + X, x2 + X>, i.e. |x_r, x_a> -> |x_r, x_a + 2X>.
/// The view is preserved.
QuditPairState displace(const QuditPairState& s, long shift);

/// Probability weights over shifts X in Z_d.
class ShiftPrior {
 public:
  explicit ShiftPrior(Eigen::VectorXd weights);

  static ShiftPrior uniform(int d);
  static ShiftPrior point(int d, long shift);
  static ShiftPrior two_point(int d, long shift1, long shift2);
  static ShiftPrior random(int d, std::uint64_t seed);

  [[nodiscard]] int dim() const noexcept { return static_cast<int>(weights_.size()); }
  [[nodiscard]] const Eigen::VectorXd& weights() const noexcept { return weights_; }

 private:
  Eigen::VectorXd weights_;
};

/// sum_X P(X) D(X)|psi><psi|D(X)^dagger in the relative basis (Basis::lattice_pair).
DensityMatrix twirl_displacement(const QuditPairState& s, const ShiftPrior& prior);

/// Partial trace over x_a; result is Basis::lattice_single.
DensityMatrix reduced_relative(const DensityMatrix& rho);

/// |x_r, x_a> -> |x_r, x_a + x_r>. Requires the relative view.
QuditPairState sum_gate(const QuditPairState& s);

/// Fourier vector e^{2 pi i p x / d} / sqrt(d) on one register.
Eigen::VectorXcd momentum_eigenstate(int d, long p);

/// Singular values of the relative-view amplitude matrix, descending.
Eigen::VectorXd schmidt_coefficients(const QuditPairState& s);

}  // namespace relframe
