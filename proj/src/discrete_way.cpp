// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#include "relframe/discrete_way.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include <Eigen/SVD>

#include "relframe/errors.hpp"

namespace relframe {

namespace {

void require_odd(int d) {
  if (d < 3 || d % 2 == 0) {
    throw PreconditionError("lattice dimension must be odd and >= 3 (got " + std::to_string(d) +
                            "); even d breaks the (x1, x2) <-> (x_r, x_a) bijection");
  }
}

Eigen::MatrixXcd basis_grid(int d, int i, int j) {
  require_odd(d);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  m(mod(i, d), mod(j, d)) = 1.0;
  return m;
}

}  // namespace

int mod(long x, int d) {
  const long r = x % d;
  return static_cast<int>(r < 0 ? r + d : r);
}

int half_mod(int d) {
  require_odd(d);
  return (d + 1) / 2;
}

QuditPairState::QuditPairState(Eigen::MatrixXcd amplitudes, LatticeView view)
    : amplitudes_(std::move(amplitudes)), view_(view) {
  if (amplitudes_.rows() != amplitudes_.cols()) throw PreconditionError("lattice grid must be d x d");
  require_odd(static_cast<int>(amplitudes_.rows()));
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-12) throw PreconditionError("lattice state must be unit norm");
}

QuditPairState QuditPairState::basis_product(int d, int x1, int x2) {
  return QuditPairState(basis_grid(d, x1, x2), LatticeView::product);
}

QuditPairState QuditPairState::basis_relative(int d, int x_r, int x_a) {
  return QuditPairState(basis_grid(d, x_r, x_a), LatticeView::relative);
}

QuditPairState QuditPairState::product(const Eigen::VectorXcd& psi_r, const Eigen::VectorXcd& psi_a) {
  if (psi_r.size() != psi_a.size()) throw DimensionError("product: registers must share d");
  if (psi_r.norm() == 0.0 || psi_a.norm() == 0.0) throw PreconditionError("product: zero factor");
  return QuditPairState(psi_r.normalized() * psi_a.normalized().transpose(), LatticeView::relative);
}

StateVector QuditPairState::as_state() const {
  const auto rel = view_ == LatticeView::relative ? *this : to_relative_basis(*this);
  const int d = dim();
  Eigen::VectorXcd v(static_cast<Eigen::Index>(d) * d);
  for (int r = 0; r < d; ++r) {
    for (int a = 0; a < d; ++a) v[r * d + a] = rel.amplitude(r, a);
  }
  return {Basis::lattice_pair, std::move(v)};
}

QuditPairState to_relative_basis(const QuditPairState& s) {
  if (s.view() == LatticeView::relative) return s;
  const int d = s.dim();
  Eigen::MatrixXcd out(d, d);
  for (int x1 = 0; x1 < d; ++x1) {
    for (int x2 = 0; x2 < d; ++x2) out(mod(x1 - x2, d), mod(x1 + x2, d)) = s.amplitude(x1, x2);
  }
  return QuditPairState(std::move(out), LatticeView::relative);
}

QuditPairState from_relative_basis(const QuditPairState& s) {
  if (s.view() == LatticeView::product) return s;
  const int d = s.dim();
  const long h = half_mod(d);
  Eigen::MatrixXcd out(d, d);
  for (int r = 0; r < d; ++r) {
    for (int a = 0; a < d; ++a) out(mod(h * (a + r), d), mod(h * (a - r), d)) = s.amplitude(r, a);
  }
  return QuditPairState(std::move(out), LatticeView::product);
}

QuditPairState displace(const QuditPairState& s, long shift) {
  const int d = s.dim();
  Eigen::MatrixXcd out(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      if (s.view() == LatticeView::product) {
        out(mod(i + shift, d), mod(j + shift, d)) = s.amplitude(i, j);
      } else {
        out(i, mod(j + 2 * shift, d)) = s.amplitude(i, j);
      }
    }
  }
  return QuditPairState(std::move(out), s.view());
}

ShiftPrior::ShiftPrior(Eigen::VectorXd weights) : weights_(std::move(weights)) {
  require_odd(static_cast<int>(weights_.size()));
  if (!weights_.allFinite() || weights_.minCoeff() < 0.0) throw PreconditionError("shift weights must be >= 0");
  if (std::abs(weights_.sum() - 1.0) > 1e-12) throw PreconditionError("shift weights must sum to 1");
}

ShiftPrior ShiftPrior::uniform(int d) {
  require_odd(d);
  return ShiftPrior(Eigen::VectorXd::Constant(d, 1.0 / d));
}

ShiftPrior ShiftPrior::point(int d, long shift) {
  require_odd(d);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  w[mod(shift, d)] = 1.0;
  return ShiftPrior(std::move(w));
}

ShiftPrior ShiftPrior::two_point(int d, long shift1, long shift2) {
  require_odd(d);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(d);
  w[mod(shift1, d)] += 0.5;
  w[mod(shift2, d)] += 0.5;
  return ShiftPrior(std::move(w));
}

ShiftPrior ShiftPrior::random(int d, std::uint64_t seed) {
  require_odd(d);
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::VectorXd w(d);
  for (int i = 0; i < d; ++i) w[i] = u(gen);
  return ShiftPrior(w / w.sum());
}

DensityMatrix twirl_displacement(const QuditPairState& s, const ShiftPrior& prior) {
  if (prior.dim() != s.dim()) throw DimensionError("twirl_displacement: prior and state disagree on d");
  const auto rel = to_relative_basis(s);
  const auto dd = static_cast<Eigen::Index>(s.dim()) * s.dim();
  // rho = V W V^dagger with one column per shift in the support
  std::vector<int> support;
  for (int x = 0; x < s.dim(); ++x) {
    if (prior.weights()[x] > 0.0) support.push_back(x);
  }
  const auto cols = static_cast<Eigen::Index>(support.size());
  Eigen::MatrixXcd v(dd, cols);
  Eigen::MatrixXcd vw(dd, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    v.col(c) = displace(rel, support[static_cast<std::size_t>(c)]).as_state().amplitudes;
    vw.col(c) = prior.weights()[support[static_cast<std::size_t>(c)]] * v.col(c);
  }
  Eigen::MatrixXcd rho = vw * v.adjoint();
  return DensityMatrix(Basis::lattice_pair, std::move(rho));
}

DensityMatrix reduced_relative(const DensityMatrix& rho) {
  if (rho.basis() != Basis::lattice_pair) throw BasisError("reduced_relative needs a lattice_pair density matrix");
  const auto d = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(rho.dim()))));
  if (d * d != rho.dim()) throw DimensionError("reduced_relative: dimension is not d^2");
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(d, d);
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index rp = 0; rp < d; ++rp) {
      cplx s{0.0};
      for (Eigen::Index a = 0; a < d; ++a) s += rho(r * d + a, rp * d + a);
      out(r, rp) = s;
    }
  }
  return DensityMatrix(Basis::lattice_single, std::move(out));
}

QuditPairState sum_gate(const QuditPairState& s) {
  if (s.view() != LatticeView::relative) throw BasisError("sum_gate acts on the relative view");
  const int d = s.dim();
  Eigen::MatrixXcd out(d, d);
  for (int r = 0; r < d; ++r) {
    for (int a = 0; a < d; ++a) out(r, mod(a + r, d)) = s.amplitude(r, a);
  }
  return QuditPairState(std::move(out), LatticeView::relative);
}

Eigen::VectorXcd momentum_eigenstate(int d, long p) {
  require_odd(d);
  Eigen::VectorXcd v(d);
  const double scale = 1.0 / std::sqrt(static_cast<double>(d));
  const int pm = mod(p, d);
  for (int x = 0; x < d; ++x) {
    v[x] = std::polar(scale, 2.0 * std::numbers::pi * static_cast<double>(mod(static_cast<long>(pm) * x, d)) / d);
  }
  return v;
}

Eigen::VectorXd schmidt_coefficients(const QuditPairState& s) {
  const auto rel = to_relative_basis(s);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(rel.amplitudes());
  return svd.singularValues();
}

}  // namespace relframe
