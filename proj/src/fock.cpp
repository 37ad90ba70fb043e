// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#include "relframe/fock.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include <Eigen/Eigenvalues>

#include "relframe/errors.hpp"

namespace relframe {

std::string_view to_string(Basis basis) {
  switch (basis) {
    case Basis::fock: return "fock";
    case Basis::block: return "block";
    case Basis::lattice_pair: return "lattice_pair";
    case Basis::lattice_single: return "lattice_single";
  }
  return "unknown";
}

namespace special {

namespace {

constexpr std::size_t kTableSize = 4096;

const std::array<long double, kTableSize>& log_factorial_table() {
  static const auto table = [] {
    std::array<long double, kTableSize> t{};
    for (std::size_t n = 0; n < kTableSize; ++n) {
      t[n] = std::lgammal(static_cast<long double>(n) + 1.0L);
    }
    return t;
  }();
  return table;
}

// Stirling series; the truncation error is below 1e-25 for n >= kTableSize.
long double stirling_log_factorial(long double n) {
  const long double inv = 1.0L / n;
  const long double inv2 = inv * inv;
  return n * std::log(n) - n + 0.5L * std::log(2.0L * std::numbers::pi_v<long double> * n) +
         inv * (1.0L / 12.0L - inv2 * (1.0L / 360.0L - inv2 * (1.0L / 1260.0L)));
}

}  // namespace

long double log_factorial(std::size_t n) {
  if (n < kTableSize) return log_factorial_table()[n];
  return stirling_log_factorial(static_cast<long double>(n));
}

long double log_binomial(std::size_t n, std::size_t k) {
  if (k > n) throw PreconditionError("log_binomial: k > n");
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

}  // namespace special

cplx mode_amplitude(double magnitude, double phase) {
  return std::polar(magnitude, -phase);
}

double mode_phase(cplx amplitude) {
  const double phi = -std::arg(amplitude);
  return phi <= -std::numbers::pi ? std::numbers::pi : phi;
}

std::size_t auto_cutoff(double magnitude) {
  const double m = std::abs(magnitude);
  return static_cast<std::size_t>(std::ceil(m * m + 10.0 * m + 10.0));
}

FockVector::FockVector(Eigen::VectorXcd amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() == 0) throw DimensionError("FockVector needs at least the vacuum entry");
}

FockVector coherent_vector(cplx alpha, std::size_t n_max) {
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(n_max) + 1);
  const long double mag = std::abs(alpha);
  if (mag == 0.0L) {
    amps[0] = 1.0;
    return FockVector(std::move(amps));
  }
  const long double log_mag = std::log(mag);
  const double phase = std::arg(alpha);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const long double ln = static_cast<long double>(n);
    const long double log_amp = -0.5L * mag * mag + ln * log_mag - 0.5L * special::log_factorial(n);
    amps[static_cast<Eigen::Index>(n)] =
        std::polar(static_cast<double>(std::exp(log_amp)), static_cast<double>(n) * phase);
  }
  return FockVector(std::move(amps));
}

cplx inner(const FockVector& u, const FockVector& v) {
  if (u.n_max() != v.n_max()) throw DimensionError("inner: truncations differ");
  return u.amplitudes().dot(v.amplitudes());
}

cplx inner(const StateVector& u, const StateVector& v) {
  if (u.basis != v.basis) throw BasisError("inner: basis mismatch");
  if (u.amplitudes.size() != v.amplitudes.size()) throw DimensionError("inner: length mismatch");
  return u.amplitudes.dot(v.amplitudes);
}

DensityMatrix::DensityMatrix(Basis basis, Eigen::MatrixXcd entries)
    : basis_(basis), entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols()) throw DimensionError("density matrix must be square");
  if (entries_.rows() == 0) throw DimensionError("density matrix must be non-empty");
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
  return DensityMatrix(psi.basis, psi.amplitudes * psi.amplitudes.adjoint());
}

double DensityMatrix::trace() const { return entries_.trace().real(); }

double DensityMatrix::hermiticity_error() const {
  return (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
}

double DensityMatrix::min_eigenvalue() const {
  const Eigen::MatrixXcd herm = 0.5 * (entries_ + entries_.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

DensityMatrix mix(double w1, const DensityMatrix& rho1, double w2, const DensityMatrix& rho2) {
  if (rho1.basis() != rho2.basis()) throw BasisError("mix: basis mismatch");
  if (rho1.dim() != rho2.dim()) throw DimensionError("mix: dimension mismatch");
  return DensityMatrix(rho1.basis(), w1 * rho1.matrix() + w2 * rho2.matrix());
}

double fidelity_pure_mixed(const StateVector& psi, const DensityMatrix& rho) {
  if (psi.basis != rho.basis()) throw BasisError("fidelity_pure_mixed: basis mismatch");
  if (psi.amplitudes.size() != rho.dim()) throw DimensionError("fidelity_pure_mixed: dimension mismatch");
  if (std::abs(psi.amplitudes.squaredNorm() - 1.0) > 1e-10) {
    throw PreconditionError("fidelity_pure_mixed: psi is not normalized");
  }
  const cplx f = psi.amplitudes.dot(rho.matrix() * psi.amplitudes);
  if (std::abs(f.imag()) > 1e-9) throw NumericalError("fidelity_pure_mixed: complex result, rho not Hermitian");
  const double re = f.real();
  if (re < -1e-9 || re > 1.0 + 1e-9) {
    throw NumericalError("fidelity_pure_mixed: value " + std::to_string(re) + " outside [0, 1]");
  }
  return std::clamp(re, 0.0, 1.0);
}

double purity(const DensityMatrix& rho) {
  return rho.matrix().cwiseProduct(rho.matrix().transpose()).sum().real();
}

double hs_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.basis() != sigma.basis()) throw BasisError("hs_distance: basis mismatch");
  if (rho.dim() != sigma.dim()) throw DimensionError("hs_distance: dimension mismatch");
  return (rho.matrix() - sigma.matrix()).norm();
}

}  // namespace relframe
