// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file two_mode.hpp
 * @brief Two-mode states in the product (n1, n2) grid and in the
 *        total-number block basis (N, k).
 *
 * The block basis relabels |n1, n2> as |N, M> with N = n1 + n2 and
 * M = (n1 - n2) / 2. M is half-integer for odd N, so storage uses the
 * integer index k = N/2 + M = n1 throughout.
 */

#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "relframe/fock.hpp"

namespace relframe {

/// <N> = |alpha|^2 + |beta|^2
class MeanPhotonNumber {
 public:
  explicit MeanPhotonNumber(double value);
  static MeanPhotonNumber of(cplx alpha, cplx beta);
  [[nodiscard]] double value() const noexcept { return value_; }

 private:
  double value_;
};

/// Truncation bounds of a two-mode grid.
struct Cutoffs {
  std::size_t n1_max;
  std::size_t n2_max;

  /// auto_cutoff applied per mode.
  static Cutoffs automatic(double alpha_magnitude, double beta_magnitude);

  friend bool operator==(const Cutoffs&, const Cutoffs&) = default;
};

/// Dense amplitude grid over 0 <= n1 <= n1_max, 0 <= n2 <= n2_max.
class TwoModeState {
 public:
  explicit TwoModeState(Eigen::MatrixXcd amplitudes);
  static TwoModeState zero(Cutoffs cutoffs);

  [[nodiscard]] std::size_t n1_max() const noexcept { return static_cast<std::size_t>(amplitudes_.rows()) - 1; }
  [[nodiscard]] std::size_t n2_max() const noexcept { return static_cast<std::size_t>(amplitudes_.cols()) - 1; }
  [[nodiscard]] Cutoffs cutoffs() const noexcept { return {n1_max(), n2_max()}; }
  [[nodiscard]] cplx amplitude(std::size_t n1, std::size_t n2) const {
    return amplitudes_(static_cast<Eigen::Index>(n1), static_cast<Eigen::Index>(n2));
  }
  [[nodiscard]] const Eigen::MatrixXcd& amplitudes() const noexcept { return amplitudes_; }
  [[nodiscard]] double squared_norm() const { return amplitudes_.squaredNorm(); }
  /// Copy scaled to unit norm; throws PreconditionError on the zero state.
  [[nodiscard]] TwoModeState normalized() const;

 private:
  Eigen::MatrixXcd amplitudes_;
};

/// Index map for the full block triangle {(N, k) : 0 <= k <= N <= n_max}.
struct BlockLayout {
  std::size_t n_max;

  [[nodiscard]] static constexpr std::size_t offset(std::size_t n) noexcept { return n * (n + 1) / 2; }
  [[nodiscard]] constexpr std::size_t dimension() const noexcept { return offset(n_max + 1); }
  [[nodiscard]] static constexpr std::size_t index(std::size_t n, std::size_t k) noexcept { return offset(n) + k; }
  /// Total photon number of every basis index, in index order.
  [[nodiscard]] std::vector<std::size_t> total_numbers() const;
};

/// One total-photon-number sector: amplitude = weight * profile.
struct Block {
  cplx weight;
  Eigen::VectorXcd profile;  ///< length N + 1, unit norm or zero
};

/// Direct sum over N = 0..max_total() of weight_N * profile_N.
class BlockState {
 public:
  BlockState() = default;
  explicit BlockState(std::vector<Block> blocks);

  [[nodiscard]] bool empty() const noexcept { return blocks_.empty(); }
  [[nodiscard]] std::size_t block_count() const noexcept { return blocks_.size(); }
  /// Largest total photon number held; requires !empty().
  [[nodiscard]] std::size_t max_total() const;
  [[nodiscard]] const Block& block(std::size_t n) const { return blocks_.at(n); }
  [[nodiscard]] const std::vector<Block>& blocks() const noexcept { return blocks_; }
  [[nodiscard]] double squared_norm() const;
  /// Vector in the BlockLayout{n_max} triangle; blocks above n_max must be zero.
  [[nodiscard]] StateVector to_state(std::size_t n_max) const;

 private:
  std::vector<Block> blocks_;
};

/// |alpha> (x) |beta> on the grid.
TwoModeState two_mode_coherent(cplx alpha, cplx beta, std::size_t n1_max, std::size_t n2_max);
TwoModeState two_mode_coherent(cplx alpha, cplx beta, Cutoffs cutoffs);

/// Relabel into blocks. Each nonzero profile is unit norm with its
/// largest-magnitude entry real and positive; the stripped phase and the
/// norm live in the block weight.
BlockState to_blocks(const TwoModeState& state);

struct FromBlocksResult {
  TwoModeState state;
  std::size_t dropped;  ///< nonzero entries that fell outside the target grid
};

FromBlocksResult from_blocks(const BlockState& blocks, std::size_t n1_max, std::size_t n2_max);

/// The state as a vector in the BlockLayout{n1_max + n2_max} triangle.
StateVector block_vector(const TwoModeState& state);

}  // namespace relframe
