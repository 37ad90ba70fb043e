// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

/**
 * @file factorization.hpp
 * @brief Approximate product structure of a two-mode coherent state.
 *
 * |alpha, beta> is compared with a state whose block N carries the
 * Poissonian weight e^{-<N>/2} (sqrt<N> e^{-i phi_beta})^N / sqrt(N!) and
 * an N-independent relative profile: the bosonic coherent state
 * |z> = ||alpha| e^{-i phi_r}>, truncated to k <= N. The approximation
 * becomes exact as <N> ~ |beta|^2 >> |alpha|^2.
 */

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "relframe/fock.hpp"
#include "relframe/two_mode.hpp"

namespace relframe {

struct FactorizationReport {
  cplx alpha;
  cplx beta;
  double pure_fidelity;
  double twirled_hs_distance;
  double relative_state_overlap;
  Cutoffs cutoffs;
  double condition_ratio;  ///< <N> / |alpha|^2, +inf when alpha = 0
};

/// Relative-mode amplitude |alpha| e^{-i phi_r} = alpha * conj(beta) / |beta|.
cplx relative_amplitude(cplx alpha, cplx beta);

/// Weighted mean over populated blocks N of |<v_N | embed_wh(z, N)>|^2,
/// weights |c_N|^2 from to_blocks.
double relative_profile_overlap(const TwoModeState& state, cplx z);

/// Normalized approximate product on the given grid. Throws
/// PreconditionError when beta = 0.
TwoModeState approx_product(cplx alpha, cplx beta, Cutoffs cutoffs);

/// Balanced regime |beta| = |alpha| with target z = sqrt(2) |alpha| e^{-i phi_r}.
/// beta is |alpha| e^{-i (phi_alpha - phi_r)}.
TwoModeState approx_product_balanced(cplx alpha, double phi_r, Cutoffs cutoffs);

/// Compare |alpha, beta> with approx_product. Without explicit cutoffs
/// the automatic policy is used. Throws CutoffError when either state
/// keeps less than 1 - 1e-8 of its norm on the grid.
FactorizationReport factorization_fidelity(cplx alpha, cplx beta, std::optional<Cutoffs> cutoffs = std::nullopt);

/// Same comparison for the balanced regime. Automatic cutoffs size mode 1
/// for the larger of |alpha| and sqrt(2)|alpha|.
FactorizationReport factorization_fidelity_balanced(cplx alpha, double phi_r,
                                                    std::optional<Cutoffs> cutoffs = std::nullopt);

/// One report per |beta| at beta = |beta| e^{-i phi_beta}, in input order.
/// An explicit override applies to every row; otherwise each row uses
/// automatic cutoffs.
std::vector<FactorizationReport> sweep_fidelity(cplx alpha, std::span<const double> beta_magnitudes, double phi_beta,
                                                std::optional<Cutoffs> cutoffs = std::nullopt);

}  // namespace relframe
