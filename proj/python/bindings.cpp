// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cli.hpp"
#include "relframe/discrete_way.hpp"
#include "relframe/errors.hpp"
#include "relframe/factorization.hpp"
#include "relframe/phase_twirl.hpp"
#include "relframe/spin_coherent.hpp"
#include "relframe/two_mode.hpp"

namespace py = pybind11;
using namespace relframe;

namespace {

std::optional<Cutoffs> cutoffs_arg(std::optional<std::size_t> n1, std::optional<std::size_t> n2) {
  if (!n1 && !n2) return std::nullopt;
  if (!n1 || !n2) throw PreconditionError("give both n1_max and n2_max or neither");
  return Cutoffs{*n1, *n2};
}

QuditPairState relative_state(const Eigen::MatrixXcd& amps) { return QuditPairState(amps, LatticeView::relative); }

ShiftPrior shift_prior(const Eigen::VectorXd& w) { return ShiftPrior(w); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coherent-state reference frames: Fock blocks, spin coherent states, phase twirls, lattice model";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<BasisError>(m, "BasisError", base.ptr());
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<CutoffError>(m, "CutoffError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());
  py::register_exception<NumericalError>(m, "NumericalError", base.ptr());

  m.def("mode_amplitude", &mode_amplitude, py::arg("magnitude"), py::arg("phase"),
        "|a| e^{-i phase}");
  m.def("mode_phase", &mode_phase, py::arg("amplitude"));
  m.def("auto_cutoff", &auto_cutoff, py::arg("magnitude"));

  m.def(
      "coherent_vector",
      [](cplx alpha, std::size_t n_max) { return Eigen::VectorXcd(coherent_vector(alpha, n_max).amplitudes()); },
      py::arg("alpha"), py::arg("n_max"));
  m.def(
      "two_mode_coherent",
      [](cplx alpha, cplx beta, std::size_t n1_max, std::size_t n2_max) {
        return Eigen::MatrixXcd(two_mode_coherent(alpha, beta, n1_max, n2_max).amplitudes());
      },
      py::arg("alpha"), py::arg("beta"), py::arg("n1_max"), py::arg("n2_max"));
  m.def(
      "to_blocks",
      [](const Eigen::MatrixXcd& grid) {
        std::vector<std::tuple<cplx, Eigen::VectorXcd>> out;
        const auto blocks = to_blocks(TwoModeState(grid));
        for (const auto& b : blocks.blocks()) out.emplace_back(b.weight, b.profile);
        return out;
      },
      py::arg("grid"), "List of (weight, unit profile over k = n1) per total number N");
  m.def(
      "from_blocks",
      [](const std::vector<std::tuple<cplx, Eigen::VectorXcd>>& blocks, std::size_t n1_max, std::size_t n2_max) {
        std::vector<Block> bs;
        bs.reserve(blocks.size());
        for (const auto& [w, p] : blocks) bs.push_back({w, p});
        auto r = from_blocks(BlockState(std::move(bs)), n1_max, n2_max);
        return py::make_tuple(Eigen::MatrixXcd(r.state.amplitudes()), r.dropped);
      },
      py::arg("blocks"), py::arg("n1_max"), py::arg("n2_max"));

  m.def(
      "params_from_modes",
      [](cplx alpha, cplx beta) {
        const auto p = params_from_modes(alpha, beta);
        return py::dict(py::arg("theta") = p.theta, py::arg("phi_r") = p.phi_r, py::arg("xi") = p.xi);
      },
      py::arg("alpha"), py::arg("beta"));
  m.def(
      "spin_coherent",
      [](std::size_t n, cplx xi) { return Eigen::VectorXcd(spin_coherent(n, xi).amplitudes()); }, py::arg("spin_size"),
      py::arg("xi"));
  m.def(
      "embed_wh", [](cplx z, std::size_t n) { return Eigen::VectorXcd(embed_wh(z, n).amplitudes()); }, py::arg("z"),
      py::arg("spin_size"));
  m.def("contraction_overlap", &contraction_overlap, py::arg("z"), py::arg("spin_size"));

  m.def(
      "twirl_two_mode",
      [](const Eigen::MatrixXcd& grid, const std::string& prior) {
        return Eigen::MatrixXcd(twirl_two_mode(TwoModeState(grid), parse_prior(prior)).matrix());
      },
      py::arg("grid"), py::arg("prior"), "Twirled density matrix in the block layout, index N(N+1)/2 + k");
  m.def(
      "random_commutant_observable",
      [](std::size_t n_max, std::uint64_t seed) {
        return Eigen::MatrixXcd(random_commutant_observable(n_max, seed).matrix());
      },
      py::arg("n_max"), py::arg("seed"));
  m.def(
      "mode2_quadrature", [](std::size_t n_max) { return Eigen::MatrixXcd(mode2_quadrature(n_max).matrix()); },
      py::arg("n_max"));
  m.def(
      "uniform_twirl_hs_distance",
      [](const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
        return uniform_twirl_hs_distance(TwoModeState(a), TwoModeState(b));
      },
      py::arg("a"), py::arg("b"));

  py::class_<FactorizationReport>(m, "FactorizationReport")
      .def_readonly("alpha", &FactorizationReport::alpha)
      .def_readonly("beta", &FactorizationReport::beta)
      .def_readonly("pure_fidelity", &FactorizationReport::pure_fidelity)
      .def_readonly("twirled_hs_distance", &FactorizationReport::twirled_hs_distance)
      .def_readonly("relative_state_overlap", &FactorizationReport::relative_state_overlap)
      .def_readonly("condition_ratio", &FactorizationReport::condition_ratio)
      .def_property_readonly("n1_max", [](const FactorizationReport& r) { return r.cutoffs.n1_max; })
      .def_property_readonly("n2_max", [](const FactorizationReport& r) { return r.cutoffs.n2_max; })
      .def("__repr__", [](const FactorizationReport& r) {
        std::ostringstream os;
        os << "FactorizationReport(pure_fidelity=" << r.pure_fidelity << ", twirled_hs_distance="
           << r.twirled_hs_distance << ", n1_max=" << r.cutoffs.n1_max << ", n2_max=" << r.cutoffs.n2_max << ")";
        return os.str();
      });

  m.def("relative_amplitude", &relative_amplitude, py::arg("alpha"), py::arg("beta"));
  m.def(
      "factorization_fidelity",
      [](cplx alpha, cplx beta, std::optional<std::size_t> n1, std::optional<std::size_t> n2) {
        return factorization_fidelity(alpha, beta, cutoffs_arg(n1, n2));
      },
      py::arg("alpha"), py::arg("beta"), py::arg("n1_max") = py::none(), py::arg("n2_max") = py::none());
  m.def(
      "factorization_fidelity_balanced",
      [](cplx alpha, double phi_r, std::optional<std::size_t> n1, std::optional<std::size_t> n2) {
        return factorization_fidelity_balanced(alpha, phi_r, cutoffs_arg(n1, n2));
      },
      py::arg("alpha"), py::arg("phi_r"), py::arg("n1_max") = py::none(), py::arg("n2_max") = py::none());
  m.def(
      "sweep_fidelity",
      [](cplx alpha, const std::vector<double>& betas, double phi_beta, std::optional<std::size_t> n1,
         std::optional<std::size_t> n2) { return sweep_fidelity(alpha, betas, phi_beta, cutoffs_arg(n1, n2)); },
      py::arg("alpha"), py::arg("beta_magnitudes"), py::arg("phi_beta") = 0.0, py::arg("n1_max") = py::none(),
      py::arg("n2_max") = py::none());

  m.def(
      "to_relative_basis",
      [](const Eigen::MatrixXcd& amps) {
        return Eigen::MatrixXcd(to_relative_basis(QuditPairState(amps, LatticeView::product)).amplitudes());
      },
      py::arg("product_amplitudes"));
  m.def(
      "from_relative_basis",
      [](const Eigen::MatrixXcd& amps) { return Eigen::MatrixXcd(from_relative_basis(relative_state(amps)).amplitudes()); },
      py::arg("relative_amplitudes"));
  m.def(
      "displace",
      [](const Eigen::MatrixXcd& amps, long shift) {
        return Eigen::MatrixXcd(displace(relative_state(amps), shift).amplitudes());
      },
      py::arg("relative_amplitudes"), py::arg("shift"));
  m.def(
      "sum_gate", [](const Eigen::MatrixXcd& amps) { return Eigen::MatrixXcd(sum_gate(relative_state(amps)).amplitudes()); },
      py::arg("relative_amplitudes"));
  m.def(
      "twirl_displacement",
      [](const Eigen::MatrixXcd& amps, const Eigen::VectorXd& weights) {
        return Eigen::MatrixXcd(twirl_displacement(relative_state(amps), shift_prior(weights)).matrix());
      },
      py::arg("relative_amplitudes"), py::arg("weights"), "Density matrix with index x_r * d + x_a");
  m.def(
      "reduced_relative",
      [](const Eigen::MatrixXcd& amps, const Eigen::VectorXd& weights) {
        return Eigen::MatrixXcd(
            reduced_relative(twirl_displacement(relative_state(amps), shift_prior(weights))).matrix());
      },
      py::arg("relative_amplitudes"), py::arg("weights"), "x_r reduction of the displacement twirl");
  m.def("momentum_eigenstate", &momentum_eigenstate, py::arg("d"), py::arg("p"));
  m.def(
      "schmidt_coefficients",
      [](const Eigen::MatrixXcd& amps) { return schmidt_coefficients(relative_state(amps)); },
      py::arg("relative_amplitudes"));

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Run a relframe subcommand in-process; returns (exit_code, stdout, stderr)");
}
