// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <random>

#include <doctest.h>

#include "oracle_fixtures.hpp"
#include "relframe/discrete_way.hpp"
#include "relframe/errors.hpp"

using namespace relframe;

namespace {

Eigen::VectorXcd random_register(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) {
    const double re = g(gen);
    v[i] = cplx{re, g(gen)};
  }
  return v.normalized();
}

QuditPairState random_pair(int d, std::mt19937_64& gen, LatticeView view) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      const double re = g(gen);
      m(i, j) = cplx{re, g(gen)};
    }
  }
  return QuditPairState(m / m.norm(), view);
}

Eigen::VectorXcd unit(int d, int i) {
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d);
  e[i] = 1.0;
  return e;
}

}  // namespace

TEST_CASE("lattice state invariants") {
  CHECK_THROWS_AS(QuditPairState::basis_product(4, 0, 0), PreconditionError);
  CHECK_THROWS_AS(QuditPairState::basis_product(1, 0, 0), PreconditionError);
  CHECK_THROWS_AS(QuditPairState(Eigen::MatrixXcd::Identity(3, 3), LatticeView::product), PreconditionError);
  CHECK_THROWS_AS(ShiftPrior(Eigen::VectorXd::Constant(3, 0.3)), PreconditionError);
  CHECK_THROWS_AS(ShiftPrior::uniform(6), PreconditionError);
  CHECK(half_mod(5) == 3);
  CHECK(mod(-3, 5) == 2);
  for (int d : {3, 5, 7, 11, 31}) CHECK(mod(2L * half_mod(d), d) == 1);
}

TEST_CASE("relative coordinates") {
  const auto o = to_relative_basis(QuditPairState::basis_product(3, 0, 0));
  CHECK(o.amplitude(0, 0) == cplx{1.0});
  const auto s = to_relative_basis(QuditPairState::basis_product(5, 3, 1));
  CHECK(s.view() == LatticeView::relative);
  CHECK(s.amplitude(2, 4) == cplx{1.0});

  std::mt19937_64 gen(5);
  for (int t = 0; t < 50; ++t) {
    const int d = 3 + 2 * (t % 5);
    const auto x = random_pair(d, gen, LatticeView::product);
    const auto back = from_relative_basis(to_relative_basis(x));
    CHECK((back.amplitudes() - x.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(std::abs(to_relative_basis(x).amplitudes().norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("displacements") {
  std::mt19937_64 gen(8);
  const auto s = random_pair(7, gen, LatticeView::relative);
  CHECK(displace(s, 0).amplitudes() == s.amplitudes());

  const auto e = displace(QuditPairState::basis_relative(7, 2, 0), 4);
  CHECK(e.amplitude(2, 1) == cplx{1.0});

  for (long x = -3; x < 10; ++x) {
    const auto moved = displace(s, x);
    // relative marginal is untouched
    const Eigen::VectorXd before = s.amplitudes().cwiseAbs2().rowwise().sum();
    const Eigen::VectorXd after = moved.amplitudes().cwiseAbs2().rowwise().sum();
    CHECK((before - after).cwiseAbs().maxCoeff() < 1e-15);
    // the same shift in either view
    const auto via_product = to_relative_basis(displace(from_relative_basis(s), x));
    CHECK((via_product.amplitudes() - moved.amplitudes()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("displacement twirl") {
  std::mt19937_64 gen(21);
  const auto s = random_pair(5, gen, LatticeView::relative);
  const auto pure = DensityMatrix::pure(s.as_state());
  const auto rho = twirl_displacement(s, ShiftPrior::point(5, 0));
  CHECK((rho.matrix() - pure.matrix()).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(rho.basis() == Basis::lattice_pair);

  for (const auto& prior : {ShiftPrior::uniform(5), ShiftPrior::two_point(5, 1, 3), ShiftPrior::random(5, 4)}) {
    const auto r = twirl_displacement(s, prior);
    CHECK(std::abs(r.trace() - 1.0) < 1e-12);
    CHECK(r.hermiticity_error() < 1e-15);
    CHECK(r.min_eigenvalue() > -1e-12);
    CHECK(std::abs(reduced_relative(r).trace() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(twirl_displacement(s, ShiftPrior::uniform(3)), DimensionError);
}

TEST_CASE("separable inputs keep a pure relative factor") {
  std::mt19937_64 gen(31);
  for (int d : {3, 5, 7}) {
    const auto psi_r = random_register(d, gen);
    const auto s = QuditPairState::product(psi_r, random_register(d, gen));
    for (const auto& prior : {ShiftPrior::uniform(d), ShiftPrior::point(d, 2), ShiftPrior::random(d, 1)}) {
      const auto rr = reduced_relative(twirl_displacement(s, prior));
      CHECK(rr.basis() == Basis::lattice_single);
      CHECK(purity(rr) == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(fidelity_pure_mixed({Basis::lattice_single, psi_r}, rr) == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("entangled inputs") {
  Eigen::VectorXcd pair = unit(5, 0) + unit(5, 1);
  const auto ent = sum_gate(QuditPairState::product(pair, pair));
  const auto rr = reduced_relative(twirl_displacement(ent, ShiftPrior::uniform(5)));
  CHECK(purity(rr) == doctest::Approx(fixtures::sum_entangled_purity_d5).epsilon(1e-13));

  for (int d : {3, 5}) {
    const Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
    const auto maxent = sum_gate(QuditPairState::product(plus, unit(d, 0)));
    for (int r = 0; r < d; ++r) CHECK(std::abs(maxent.amplitude(r, r) - plus[r]) < 1e-15);
    CHECK(purity(reduced_relative(twirl_displacement(maxent, ShiftPrior::uniform(d)))) ==
          doctest::Approx(1.0 / d).epsilon(1e-13));
  }

  CHECK_THROWS_AS(reduced_relative(DensityMatrix(Basis::fock, Eigen::MatrixXcd::Identity(9, 9) / 9.0)), BasisError);
  CHECK_THROWS_AS(reduced_relative(DensityMatrix(Basis::lattice_pair, Eigen::MatrixXcd::Identity(8, 8) / 8.0)),
                  DimensionError);
}

TEST_CASE("SUM gate") {
  const int d = 5;
  for (int a = 0; a < d; ++a) {
    CHECK(sum_gate(QuditPairState::basis_relative(d, 0, a)).amplitude(0, a) == cplx{1.0});
  }
  CHECK(sum_gate(QuditPairState::basis_relative(d, 3, 4)).amplitude(3, 2) == cplx{1.0});
  CHECK_THROWS_AS(sum_gate(QuditPairState::basis_product(d, 0, 0)), BasisError);

  std::mt19937_64 gen(77);
  const auto s = random_pair(d, gen, LatticeView::relative);
  CHECK(std::abs(sum_gate(s).amplitudes().norm() - 1.0) < 1e-12);
  for (long x = 0; x < d; ++x) {
    const auto lhs = sum_gate(displace(s, x));
    const auto rhs = displace(sum_gate(s), x);
    CHECK((lhs.amplitudes() - rhs.amplitudes()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("SUM gate and the uniform twirl commute") {
  std::mt19937_64 gen(13);
  const auto s = random_pair(5, gen, LatticeView::relative);
  const auto a = twirl_displacement(sum_gate(s), ShiftPrior::uniform(5));
  // SUM acts on the twirl as a permutation P rho P^T in the x_r * d + x_a index
  const auto rho = twirl_displacement(s, ShiftPrior::uniform(5));
  Eigen::MatrixXcd perm = Eigen::MatrixXcd::Zero(25, 25);
  for (int r = 0; r < 5; ++r) {
    for (int x = 0; x < 5; ++x) perm(r * 5 + mod(x + r, 5), r * 5 + x) = 1.0;
  }
  const Eigen::MatrixXcd b = perm * rho.matrix() * perm.adjoint();
  CHECK((a.matrix() - b).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("momentum eigenstates") {
  const int d = 7;
  const auto p0 = momentum_eigenstate(d, 0);
  for (int x = 0; x < d; ++x) CHECK(std::abs(p0[x] - 1.0 / std::sqrt(7.0)) < 1e-15);
  for (long p = 0; p < d; ++p) {
    const auto v = momentum_eigenstate(d, p);
    CHECK(std::abs(v.norm() - 1.0) < 1e-14);
    Eigen::VectorXcd shifted(d);
    for (int x = 0; x < d; ++x) shifted[mod(x + 1, d)] = v[x];
    CHECK(std::abs(std::abs(v.dot(shifted)) - 1.0) < 1e-14);
    for (long q = p + 1; q < d; ++q) CHECK(std::abs(v.dot(momentum_eigenstate(d, q))) < 1e-12);
  }
  CHECK((momentum_eigenstate(d, -1) - momentum_eigenstate(d, 6)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("phase kickback keeps product form") {
  std::mt19937_64 gen(3);
  for (int d : {5, 7}) {
    for (long p = 0; p < d; ++p) {
      const auto out = sum_gate(QuditPairState::product(random_register(d, gen), momentum_eigenstate(d, p)));
      const auto sv = schmidt_coefficients(out);
      CHECK(sv[0] == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(sv.tail(d - 1).maxCoeff() < 1e-12);
    }
  }
  Eigen::VectorXcd pair = unit(5, 0) + unit(5, 1);
  CHECK(schmidt_coefficients(sum_gate(QuditPairState::product(pair, pair)))[1] > 0.1);
}
