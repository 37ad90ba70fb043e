// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file phase_twirl.hpp
 * @brief Equivalence-class states: averages over an untestable prior on
 *        the absolute phase.
 *
 * A phase rotation acts as U(phi)|n> = e^{-i phi n}|n> on one mode and as
 * e^{-i phi N} on the total photon number of two modes. Twirling a pure
 * state gives rho_ij = psi_i psi_j^* g(n_i - n_j) with the prior's
 * characteristic function g(D) = sum_j w_j e^{-i phi_j D}. The uniform
 * prior takes the exact path g(D) = [D == 0].
 *
 * Prior spec strings (shared with the CLI):
 *
 *     uniform | point:<phi> | twopoint:<phi1>,<phi2> | vonmises:<kappa> | grid:<path>
 *
 * where a grid file holds CSV rows `angle,weight` with angles in [0, 2 pi).
 */

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Core>

#include "relframe/fock.hpp"
#include "relframe/two_mode.hpp"

namespace relframe {

struct PriorPoint {
  double angle;
  double weight;
};

/// Discrete prior over phase angles: strictly increasing angles in
/// [0, 2 pi), nonnegative weights summing to 1 within 1e-12.
class PriorGrid {
 public:
  explicit PriorGrid(std::vector<PriorPoint> points);

  static PriorGrid point(double phi);
  /// Equal weights; coincident angles collapse to a point prior.
  static PriorGrid two_point(double phi1, double phi2);
  /// Weights proportional to exp(kappa cos phi) on `resolution` equally
  /// spaced angles.
  static PriorGrid von_mises(double kappa, std::size_t resolution = 256);
  /// Seeded random angles and weights.
  static PriorGrid random(std::uint64_t seed, std::size_t count = 16);
  /// CSV rows `angle,weight`; blank lines and lines starting with '#' are
  /// skipped. Rows are sorted and weights renormalized.
  static PriorGrid from_csv(const std::filesystem::path& path);

  [[nodiscard]] const std::vector<PriorPoint>& points() const noexcept { return points_; }
  /// sum_j w_j e^{-i phi_j delta}
  [[nodiscard]] cplx characteristic(long delta) const;

 private:
  std::vector<PriorPoint> points_;
};

/// Selects the exact analytic dephasing path.
struct UniformPrior {};

using Prior = std::variant<UniformPrior, PriorGrid>;

/// Parse a prior spec string; throws ConfigError.
Prior parse_prior(std::string_view spec);

/// sum_j w_j U(phi_j)|psi><psi|U(phi_j)^dagger over photon number n.
DensityMatrix twirl_single_mode(const FockVector& psi, const Prior& prior);

/// Same with U(phi) = e^{-i phi (n1 + n2)}; the result lives in the block
/// triangle BlockLayout{n1_max + n2_max}.
DensityMatrix twirl_two_mode(const TwoModeState& state, const Prior& prior);

/// Twirl of a density matrix already in the fock or block basis.
DensityMatrix twirl_density(const DensityMatrix& rho, const Prior& prior);

/// Hermitian operator over a tagged basis.
class Observable {
 public:
  Observable(Basis basis, Eigen::MatrixXcd matrix);
  [[nodiscard]] Basis basis() const noexcept { return basis_; }
  [[nodiscard]] Eigen::Index dim() const noexcept { return matrix_.rows(); }
  [[nodiscard]] const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }

 private:
  Basis basis_;
  Eigen::MatrixXcd matrix_;
};

/// Random Hermitian observable on BlockLayout{n_max}, zero between blocks
/// of different N, so [O, N] = 0 exactly. Deterministic per seed.
Observable random_commutant_observable(std::size_t n_max, std::uint64_t seed);

/// a2 + a2^dagger on BlockLayout{n_max}, truncated at the triangle edge.
/// Couples N to N +- 1, so it does not commute with total photon number.
Observable mode2_quadrature(std::size_t n_max);

/// Commutator norm ||[O, P_N]||_F summed over all block projectors P_N.
double block_commutator_norm(const Observable& obs);

/// Tr(O rho); throws NumericalError if the imaginary residue exceeds 1e-10.
double expectation(const Observable& obs, const DensityMatrix& rho);

/// ||T(a) - T(b)||_HS for the uniform twirl T, evaluated block by block:
/// sum_N ||a_N a_N^+ - b_N b_N^+||_F^2 with no dense matrices. Both
/// states must share a grid.
double uniform_twirl_hs_distance(const TwoModeState& a, const TwoModeState& b);

}  // namespace relframe
