// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#include "relframe/two_mode.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "relframe/errors.hpp"

namespace relframe {

MeanPhotonNumber::MeanPhotonNumber(double value) : value_(value) {
  if (!(value >= 0.0)) throw PreconditionError("mean photon number must be nonnegative");
}

MeanPhotonNumber MeanPhotonNumber::of(cplx alpha, cplx beta) {
  return MeanPhotonNumber(std::norm(alpha) + std::norm(beta));
}

Cutoffs Cutoffs::automatic(double alpha_magnitude, double beta_magnitude) {
  return {auto_cutoff(alpha_magnitude), auto_cutoff(beta_magnitude)};
}

TwoModeState::TwoModeState(Eigen::MatrixXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.rows() == 0 || amplitudes_.cols() == 0) {
    throw DimensionError("TwoModeState grid must be at least 1 x 1");
  }
}

TwoModeState TwoModeState::zero(Cutoffs cutoffs) {
  return TwoModeState(Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(cutoffs.n1_max) + 1,
                                             static_cast<Eigen::Index>(cutoffs.n2_max) + 1));
}

TwoModeState TwoModeState::normalized() const {
  const double norm = amplitudes_.norm();
  if (norm == 0.0) throw PreconditionError("cannot normalize the zero state");
  return TwoModeState(amplitudes_ / norm);
}

std::vector<std::size_t> BlockLayout::total_numbers() const {
  std::vector<std::size_t> out;
  out.reserve(dimension());
  for (std::size_t n = 0; n <= n_max; ++n) out.insert(out.end(), n + 1, n);
  return out;
}

BlockState::BlockState(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
  for (std::size_t n = 0; n < blocks_.size(); ++n) {
    if (static_cast<std::size_t>(blocks_[n].profile.size()) != n + 1) {
      throw DimensionError("block " + std::to_string(n) + " profile must have length N + 1");
    }
  }
}

std::size_t BlockState::max_total() const {
  if (blocks_.empty()) throw PreconditionError("empty BlockState has no blocks");
  return blocks_.size() - 1;
}

double BlockState::squared_norm() const {
  double s = 0.0;
  for (const auto& b : blocks_) s += std::norm(b.weight) * b.profile.squaredNorm();
  return s;
}

StateVector BlockState::to_state(std::size_t n_max) const {
  const BlockLayout layout{n_max};
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout.dimension()));
  for (std::size_t n = 0; n < blocks_.size(); ++n) {
    const auto& b = blocks_[n];
    if (n > n_max) {
      if (b.weight != cplx{0.0} && b.profile.squaredNorm() > 0.0) {
        throw DimensionError("BlockState::to_state: populated block above n_max");
      }
      continue;
    }
    v.segment(static_cast<Eigen::Index>(BlockLayout::offset(n)), static_cast<Eigen::Index>(n + 1)) =
        b.weight * b.profile;
  }
  return {Basis::block, std::move(v)};
}

TwoModeState two_mode_coherent(cplx alpha, cplx beta, std::size_t n1_max, std::size_t n2_max) {
  const auto a = coherent_vector(alpha, n1_max);
  const auto b = coherent_vector(beta, n2_max);
  return TwoModeState(a.amplitudes() * b.amplitudes().transpose());
}

TwoModeState two_mode_coherent(cplx alpha, cplx beta, Cutoffs cutoffs) {
  return two_mode_coherent(alpha, beta, cutoffs.n1_max, cutoffs.n2_max);
}

BlockState to_blocks(const TwoModeState& state) {
  const std::size_t n1_max = state.n1_max();
  const std::size_t n2_max = state.n2_max();
  std::vector<Block> blocks;
  blocks.reserve(n1_max + n2_max + 1);
  for (std::size_t n = 0; n <= n1_max + n2_max; ++n) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n) + 1);
    const std::size_t k_lo = n > n2_max ? n - n2_max : 0;
    const std::size_t k_hi = std::min(n, n1_max);
    for (std::size_t k = k_lo; k <= k_hi; ++k) v[static_cast<Eigen::Index>(k)] = state.amplitude(k, n - k);

    const double norm = v.norm();
    if (norm == 0.0) {
      blocks.push_back({cplx{0.0}, std::move(v)});
      continue;
    }
    Eigen::Index top = 0;
    v.cwiseAbs().maxCoeff(&top);
    const cplx phase = v[top] / std::abs(v[top]);
    v /= norm * phase;
    v[top] = std::abs(v[top]);
    blocks.push_back({norm * phase, std::move(v)});
  }
  return BlockState(std::move(blocks));
}

FromBlocksResult from_blocks(const BlockState& blocks, std::size_t n1_max, std::size_t n2_max) {
  auto out = TwoModeState::zero({n1_max, n2_max});
  Eigen::MatrixXcd grid = out.amplitudes();
  std::size_t dropped = 0;
  for (std::size_t n = 0; n < blocks.block_count(); ++n) {
    const auto& b = blocks.block(n);
    for (std::size_t k = 0; k <= n; ++k) {
      const cplx amp = b.weight * b.profile[static_cast<Eigen::Index>(k)];
      if (amp == cplx{0.0}) continue;
      if (k > n1_max || n - k > n2_max) {
        ++dropped;
        continue;
      }
      grid(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(n - k)) = amp;
    }
  }
  return {TwoModeState(std::move(grid)), dropped};
}

StateVector block_vector(const TwoModeState& state) {
  const BlockLayout layout{state.n1_max() + state.n2_max()};
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(layout.dimension()));
  for (std::size_t n1 = 0; n1 <= state.n1_max(); ++n1) {
    for (std::size_t n2 = 0; n2 <= state.n2_max(); ++n2) {
      v[static_cast<Eigen::Index>(BlockLayout::index(n1 + n2, n1))] = state.amplitude(n1, n2);
    }
  }
  return {Basis::block, std::move(v)};
}

}  // namespace relframe
