// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <vector>

#include <doctest.h>

#include "oracle_fixtures.hpp"
#include "relframe/errors.hpp"
#include "relframe/phase_twirl.hpp"

using namespace relframe;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Prior> prior_family() {
  return {UniformPrior{}, PriorGrid::point(0.4), PriorGrid::two_point(0.0, kPi), PriorGrid::von_mises(3.0),
          PriorGrid::random(5)};
}

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << body;
  return p;
}

}  // namespace

TEST_CASE("prior grids validate their input") {
  CHECK_THROWS_AS(PriorGrid({}), PreconditionError);
  CHECK_THROWS_AS(PriorGrid({{0.0, 0.5}, {1.0, 0.4}}), PreconditionError);
  CHECK_THROWS_AS(PriorGrid({{1.0, 0.5}, {0.5, 0.5}}), PreconditionError);
  CHECK_THROWS_AS(PriorGrid({{0.0, 1.5}, {1.0, -0.5}}), PreconditionError);
  CHECK_THROWS_AS(PriorGrid({{7.0, 1.0}}), PreconditionError);
  CHECK(PriorGrid::two_point(1.0, 1.0).points().size() == 1);
  CHECK(PriorGrid::point(-kPi / 2).points()[0].angle == doctest::Approx(1.5 * kPi));

  const auto vm = PriorGrid::von_mises(2.0);
  CHECK(vm.points().size() == 256);
  double total = 0.0;
  for (const auto& p : vm.points()) total += p.weight;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));

  const auto r1 = PriorGrid::random(9);
  const auto r2 = PriorGrid::random(9);
  REQUIRE(r1.points().size() == r2.points().size());
  for (std::size_t i = 0; i < r1.points().size(); ++i) CHECK(r1.points()[i].angle == r2.points()[i].angle);
}

TEST_CASE("prior spec strings") {
  CHECK(std::holds_alternative<UniformPrior>(parse_prior("uniform")));
  const auto p = std::get<PriorGrid>(parse_prior("point:1.25"));
  CHECK(p.points()[0].angle == doctest::Approx(1.25));
  CHECK(std::get<PriorGrid>(parse_prior("twopoint:0,3.14159")).points().size() == 2);
  CHECK(std::get<PriorGrid>(parse_prior("vonmises:4")).points().size() == 256);
  CHECK_THROWS_AS(parse_prior("gaussian:1"), ConfigError);
  CHECK_THROWS_AS(parse_prior("point:abc"), ConfigError);
  CHECK_THROWS_AS(parse_prior("twopoint:1"), ConfigError);
  CHECK_THROWS_AS(parse_prior("grid:/nonexistent/prior.csv"), ConfigError);
}

TEST_CASE("grid prior files") {
  const auto path = write_temp("relframe_prior_ok.csv", "# angle,weight\n3.0,1\n\n0.5,3\n");
  const auto g = std::get<PriorGrid>(parse_prior("grid:" + path.string()));
  REQUIRE(g.points().size() == 2);
  CHECK(g.points()[0].angle == doctest::Approx(0.5));
  CHECK(g.points()[0].weight == doctest::Approx(0.75));

  CHECK_THROWS_AS(PriorGrid::from_csv(write_temp("relframe_prior_dup.csv", "1,1\n1,2\n")), ConfigError);
  CHECK_THROWS_AS(PriorGrid::from_csv(write_temp("relframe_prior_bad.csv", "1;2\n")), ConfigError);
  CHECK_THROWS_AS(PriorGrid::from_csv(write_temp("relframe_prior_range.csv", "7,1\n")), ConfigError);
}

TEST_CASE("uniform twirl of a coherent vector is Poissonian and diagonal") {
  const cplx a = mode_amplitude(1.3, 0.5);
  const auto psi = coherent_vector(a, 30);
  const auto rho = twirl_single_mode(FockVector(psi.amplitudes().normalized()), UniformPrior{});
  double off = 0.0;
  for (Eigen::Index i = 0; i < rho.dim(); ++i) {
    for (Eigen::Index j = 0; j < rho.dim(); ++j) {
      if (i != j) off = std::max(off, std::abs(rho(i, j)));
    }
  }
  CHECK(off == 0.0);
  double term = std::exp(-std::norm(a));
  for (Eigen::Index n = 0; n <= 20; ++n) {
    if (n > 0) term *= std::norm(a) / static_cast<double>(n);
    CHECK(std::abs(rho(n, n).real() - term) < 1e-14);
  }
}

TEST_CASE("point and two-point twirls") {
  const FockVector psi(coherent_vector(1.0, 30).amplitudes().normalized());
  const auto rho = twirl_single_mode(psi, PriorGrid::point(0.7));
  CHECK(purity(rho) == doctest::Approx(1.0).epsilon(1e-13));

  Eigen::VectorXcd plus(2);
  plus << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  const auto r2 = twirl_single_mode(FockVector(plus), PriorGrid::two_point(0.0, kPi));
  CHECK(std::abs(r2(0, 0) - 0.5) < 1e-15);
  CHECK(std::abs(r2(1, 1) - 0.5) < 1e-15);
  CHECK(std::abs(r2(0, 1)) < 1e-15);

  CHECK_THROWS_AS(twirl_single_mode(FockVector(2.0 * plus), UniformPrior{}), PreconditionError);
}

TEST_CASE("two-mode twirls") {
  const cplx a = mode_amplitude(1.0, 0.3);
  const cplx b = mode_amplitude(2.0, 0.1);
  const auto s = two_mode_coherent(a, b, 14, 24).normalized();
  const auto layout = BlockLayout{38};
  const auto numbers = layout.total_numbers();
  const auto uni = twirl_two_mode(s, UniformPrior{});
  CHECK(uni.basis() == Basis::block);
  CHECK(uni.dim() == static_cast<Eigen::Index>(layout.dimension()));

  double cross = 0.0;
  for (Eigen::Index i = 0; i < uni.dim(); ++i) {
    for (Eigen::Index j = 0; j < uni.dim(); ++j) {
      if (numbers[static_cast<std::size_t>(i)] != numbers[static_cast<std::size_t>(j)]) {
        cross = std::max(cross, std::abs(uni(i, j)));
      }
    }
  }
  CHECK(cross == 0.0);

  // block weights: e^{-<N>} <N>^N / N!, up to the grid renormalization
  const auto blocks = to_blocks(s);
  for (std::size_t n = 0; n <= 15; ++n) {
    double w = 0.0;
    for (std::size_t k = 0; k <= n; ++k) w += uni(layout.index(n, k), layout.index(n, k)).real();
    const double poisson = std::exp(-5.0 + n * std::log(5.0) - std::lgamma(n + 1.0));
    CHECK(std::abs(w - poisson) < 1e-6);
    CHECK(std::abs(w - std::norm(blocks.block(n).weight)) < 1e-14);
  }

  for (const auto& prior : prior_family()) {
    const auto rho = twirl_two_mode(s, prior);
    CHECK(std::abs(rho.trace() - 1.0) < 1e-12);
    CHECK(rho.hermiticity_error() < 1e-14);
    // within-block entries are untouched by any prior
    double dev = 0.0;
    for (std::size_t n = 0; n <= 38; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        for (std::size_t q = 0; q <= n; ++q) dev = std::max(dev, std::abs(rho(layout.index(n, k), layout.index(n, q)) - uni(layout.index(n, k), layout.index(n, q))));
      }
    }
    CHECK(dev < 1e-12);
  }
  CHECK(purity(twirl_two_mode(s, PriorGrid::point(2.0))) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("twirls are positive and the uniform twirl is idempotent") {
  const auto s = two_mode_coherent(mode_amplitude(0.8, 1.0), mode_amplitude(1.2, -0.5), 8, 10).normalized();
  for (const auto& prior : prior_family()) {
    const auto rho = twirl_two_mode(s, prior);
    CHECK(rho.min_eigenvalue() > -1e-10);
    const auto once = twirl_density(rho, UniformPrior{});
    const auto twice = twirl_density(once, UniformPrior{});
    CHECK((once.matrix() - twice.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
  }
  const auto uni = twirl_two_mode(s, UniformPrior{});
  CHECK((twirl_density(uni, UniformPrior{}).matrix() - uni.matrix()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK_THROWS_AS(twirl_density(DensityMatrix(Basis::block, Eigen::MatrixXcd::Identity(4, 4)), UniformPrior{}),
                  DimensionError);
}

TEST_CASE("von Mises grid resolution is converged") {
  const auto s = two_mode_coherent(1.0, 2.0, 14, 24).normalized();
  const auto control = mode2_quadrature(38);
  const double coarse = expectation(control, twirl_two_mode(s, PriorGrid::von_mises(2.0, 256)));
  const double fine = expectation(control, twirl_two_mode(s, PriorGrid::von_mises(2.0, 512)));
  CHECK(std::abs(coarse - fine) < 1e-9);
}

TEST_CASE("commutant observables") {
  const auto o1 = random_commutant_observable(10, 1);
  const auto o1b = random_commutant_observable(10, 1);
  const auto o2 = random_commutant_observable(10, 2);
  CHECK(block_commutator_norm(o1) == 0.0);
  CHECK(o1.matrix() == o1b.matrix());
  CHECK((o1.matrix() - o2.matrix()).cwiseAbs().maxCoeff() > 1e-6);
  CHECK(block_commutator_norm(mode2_quadrature(10)) > 1.0);
  CHECK_THROWS_AS(Observable(Basis::fock, Eigen::MatrixXcd::Random(3, 3)), PreconditionError);
}

TEST_CASE("commutant expectations do not depend on the prior") {
  const auto s = two_mode_coherent(mode_amplitude(1.0, 0.3), mode_amplitude(2.0, 0.1), 14, 24).normalized();
  const auto pure = DensityMatrix::pure(block_vector(s));
  std::vector<DensityMatrix> rhos;
  for (const auto& p : prior_family()) rhos.push_back(twirl_two_mode(s, p));
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto obs = random_commutant_observable(38, seed);
    const double ref = expectation(obs, pure);
    for (const auto& rho : rhos) CHECK(std::abs(expectation(obs, rho) - ref) < 1e-10);
  }
}

TEST_CASE("control observable distinguishes priors") {
  const auto s = two_mode_coherent(1.0, 2.0, 14, 24).normalized();
  const auto control = mode2_quadrature(38);
  const double at_zero = expectation(control, twirl_two_mode(s, PriorGrid::point(0.0)));
  CHECK(at_zero == doctest::Approx(fixtures::quadrature_point0_value).epsilon(1e-12));
  CHECK(std::abs(expectation(control, twirl_two_mode(s, UniformPrior{}))) < 1e-15);
}

TEST_CASE("expectation contract") {
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(3);
  e0[0] = 1.0;
  const auto rho0 = DensityMatrix::pure({Basis::fock, e0});
  CHECK(expectation(Observable(Basis::fock, Eigen::MatrixXcd::Identity(3, 3)), rho0) == 1.0);
  CHECK(expectation(Observable(Basis::fock, e0 * e0.adjoint()), rho0) == 1.0);

  Eigen::VectorXcd e1 = Eigen::VectorXcd::Zero(3);
  e1[1] = 1.0;
  Eigen::MatrixXcd o = Eigen::MatrixXcd::Zero(3, 3);
  o(0, 0) = 2.0;
  o(1, 1) = -1.0;
  o(0, 1) = o(1, 0) = 0.5;
  const Observable obs(Basis::fock, o);
  const auto rho1 = DensityMatrix::pure({Basis::fock, e1});
  CHECK(expectation(obs, mix(0.5, rho0, 0.5, rho1)) ==
        doctest::Approx(0.5 * expectation(obs, rho0) + 0.5 * expectation(obs, rho1)));

  CHECK_THROWS_AS(expectation(obs, DensityMatrix::pure({Basis::block, e0})), BasisError);
  CHECK_THROWS_AS(expectation(obs, DensityMatrix(Basis::fock, Eigen::MatrixXcd::Identity(4, 4) / 4.0)), DimensionError);
  Eigen::MatrixXcd skew = Eigen::MatrixXcd::Zero(3, 3);
  skew(0, 1) = cplx{0, 1};
  skew(1, 0) = cplx{0, 1};
  CHECK_THROWS_AS(expectation(obs, DensityMatrix(Basis::fock, skew)), NumericalError);
}

TEST_CASE("uniform-twirl HS distance matches the dense computation") {
  const auto a = two_mode_coherent(mode_amplitude(1.0, 0.2), 1.5, 6, 8).normalized();
  const auto b = two_mode_coherent(mode_amplitude(0.9, 0.1), 1.6, 6, 8).normalized();
  const double dense = hs_distance(twirl_two_mode(a, UniformPrior{}), twirl_two_mode(b, UniformPrior{}));
  CHECK(uniform_twirl_hs_distance(a, b) == doctest::Approx(dense).epsilon(1e-10));
  CHECK(uniform_twirl_hs_distance(a, a) == 0.0);
  CHECK_THROWS_AS(uniform_twirl_hs_distance(a, TwoModeState::zero({6, 9})), DimensionError);
}
