// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#include "cli.hpp"

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "relframe/discrete_way.hpp"
#include "relframe/errors.hpp"
#include "relframe/factorization.hpp"
#include "relframe/phase_twirl.hpp"
#include "relframe/spin_coherent.hpp"
#include "relframe/two_mode.hpp"

namespace relframe::cli {

namespace {

using json = nlohmann::ordered_json;
using Cell = std::variant<double, long long, std::string>;

struct Table {
  std::string command;
  json config = json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

struct Common {
  std::string output = "csv";
  std::string out_path;
  std::uint64_t seed = 0;
};

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\n") == std::string_view::npos) return std::string(s);
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  q += '"';
  return q;
}

std::string cell_text(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  return csv_field(std::get<std::string>(c));
}

json cell_json(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return std::isfinite(*d) ? json(*d) : json(nullptr);
  if (const auto* i = std::get_if<long long>(&c)) return json(*i);
  return json(std::get<std::string>(c));
}

std::string config_value_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) {
      if (!s.empty()) s += ';';
      s += config_value_text(e);
    }
    return s;
  }
  return v.dump();
}

std::string render(const Table& t, const std::string& format) {
  std::ostringstream os;
  if (format == "json") {
    json doc;
    doc["metadata"] = {{"command", t.command}, {"config", t.config}};
    json rows = json::array();
    for (const auto& r : t.rows) {
      json row = json::object();
      for (std::size_t i = 0; i < t.columns.size(); ++i) row[t.columns[i]] = cell_json(r[i]);
      rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
    return os.str();
  }
  os << "# relframe " << t.command;
  for (const auto& [k, v] : t.config.items()) os << ' ' << k << '=' << config_value_text(v);
  os << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& r : t.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << cell_text(r[i]);
    os << '\n';
  }
  return os.str();
}

void echo_common(json& config, const Common& c) {
  config["seed"] = c.seed;
  config["output"] = c.output;
  config["out"] = c.out_path.empty() ? std::string("-") : c.out_path;
}

json cutoff_echo(const CLI::Option* opt, long long value) {
  return opt->count() ? json(value) : json("auto");
}

// ---------------------------------------------------------------- factorize-sweep

struct SweepArgs {
  double alpha = 0.0;
  double alpha_phase = 0.0;
  std::vector<double> beta_list{2, 4, 8, 16, 32};
  double beta_phase = 0.0;
  long long n1_max = 0;
  long long n2_max = 0;
  CLI::Option* n1_opt = nullptr;
  CLI::Option* n2_opt = nullptr;
};

Table run_sweep(const SweepArgs& a, const Common& common) {
  Table t;
  t.command = "factorize-sweep";
  t.config["alpha"] = a.alpha;
  t.config["alpha_phase"] = a.alpha_phase;
  t.config["beta_list"] = a.beta_list;
  t.config["beta_phase"] = a.beta_phase;
  t.config["n1_max"] = cutoff_echo(a.n1_opt, a.n1_max);
  t.config["n2_max"] = cutoff_echo(a.n2_opt, a.n2_max);
  echo_common(t.config, common);
  t.columns = {"alpha_mag",     "alpha_phase",   "beta_mag",      "beta_phase",          "n1_max",
               "n2_max",        "condition_ratio", "pure_fidelity", "twirled_hs_distance", "relative_state_overlap"};

  const cplx alpha = mode_amplitude(a.alpha, a.alpha_phase);
  const bool has_n1 = a.n1_opt->count() > 0;
  const bool has_n2 = a.n2_opt->count() > 0;
  std::vector<FactorizationReport> reports;
  if (has_n1 == has_n2) {
    std::optional<Cutoffs> c;
    if (has_n1) c = Cutoffs{static_cast<std::size_t>(a.n1_max), static_cast<std::size_t>(a.n2_max)};
    reports = sweep_fidelity(alpha, a.beta_list, a.beta_phase, c);
  } else {
    for (double b : a.beta_list) {
      Cutoffs c = Cutoffs::automatic(a.alpha, b);
      if (has_n1) c.n1_max = static_cast<std::size_t>(a.n1_max);
      if (has_n2) c.n2_max = static_cast<std::size_t>(a.n2_max);
      reports.push_back(factorization_fidelity(alpha, mode_amplitude(b, a.beta_phase), c));
    }
  }
  for (std::size_t i = 0; i < reports.size(); ++i) {
    const auto& r = reports[i];
    t.rows.push_back({a.alpha, a.alpha_phase, a.beta_list[i], a.beta_phase,
                      static_cast<long long>(r.cutoffs.n1_max), static_cast<long long>(r.cutoffs.n2_max),
                      r.condition_ratio, r.pure_fidelity, r.twirled_hs_distance, r.relative_state_overlap});
  }
  return t;
}

// ---------------------------------------------------------------- contract-overlap

struct ContractArgs {
  double z = 1.0;
  double z_phase = 0.0;
  std::vector<long long> n_list{25, 50, 100, 200, 400, 800};
};

Table run_contract(const ContractArgs& a, const Common& common) {
  Table t;
  t.command = "contract-overlap";
  t.config["z"] = a.z;
  t.config["z_phase"] = a.z_phase;
  t.config["n_list"] = a.n_list;
  echo_common(t.config, common);
  t.columns = {"z_mag", "z_phase", "N", "overlap"};
  const cplx z = mode_amplitude(a.z, a.z_phase);
  for (long long n : a.n_list) {
    t.rows.push_back({a.z, a.z_phase, n, contraction_overlap(z, static_cast<std::size_t>(n))});
  }
  return t;
}

// ---------------------------------------------------------------- twirl-demo

struct TwirlArgs {
  double alpha = 1.0;
  double alpha_phase = 0.0;
  double beta = 2.0;
  double beta_phase = 0.0;
  long long n1_max = 0;
  long long n2_max = 0;
  CLI::Option* n1_opt = nullptr;
  CLI::Option* n2_opt = nullptr;
  long long observables = 8;
  std::vector<std::string> priors{"uniform", "point:0", "point:1.3", "twopoint:0,3.141592653589793", "vonmises:2"};
};

Table run_twirl(const TwirlArgs& a, const Common& common) {
  std::vector<Prior> priors;
  priors.reserve(a.priors.size());
  for (const auto& p : a.priors) priors.push_back(parse_prior(p));

  const Cutoffs autoc = Cutoffs::automatic(a.alpha, a.beta);
  const Cutoffs c{a.n1_opt->count() ? static_cast<std::size_t>(a.n1_max) : autoc.n1_max,
                  a.n2_opt->count() ? static_cast<std::size_t>(a.n2_max) : autoc.n2_max};

  Table t;
  t.command = "twirl-demo";
  t.config["alpha"] = a.alpha;
  t.config["alpha_phase"] = a.alpha_phase;
  t.config["beta"] = a.beta;
  t.config["beta_phase"] = a.beta_phase;
  t.config["n1_max"] = static_cast<long long>(c.n1_max);
  t.config["n2_max"] = static_cast<long long>(c.n2_max);
  t.config["observables"] = a.observables;
  t.config["priors"] = a.priors;
  echo_common(t.config, common);
  t.columns = {"prior", "control"};
  for (long long j = 0; j < a.observables; ++j) t.columns.push_back("commutant_" + std::to_string(j));

  const auto state =
      two_mode_coherent(mode_amplitude(a.alpha, a.alpha_phase), mode_amplitude(a.beta, a.beta_phase), c).normalized();
  const std::size_t n_max = c.n1_max + c.n2_max;
  const auto control = mode2_quadrature(n_max);
  for (std::size_t i = 0; i < priors.size(); ++i) {
    const auto rho = twirl_two_mode(state, priors[i]);
    std::vector<Cell> row{a.priors[i], expectation(control, rho)};
    for (long long j = 0; j < a.observables; ++j) {
      const auto obs = random_commutant_observable(n_max, common.seed + static_cast<std::uint64_t>(j));
      row.emplace_back(expectation(obs, rho));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

// ---------------------------------------------------------------- way-demo

struct WayArgs {
  std::vector<int> dims{3, 5, 7};
  std::vector<std::string> priors{"uniform", "point:0", "point:1", "twopoint:0,1", "random"};
};

long parse_shift(std::string_view text, std::string_view spec) {
  long v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc{} || ptr != end) throw ConfigError("bad lattice shift in prior '" + std::string(spec) + "'");
  return v;
}

ShiftPrior parse_shift_prior(std::string_view spec, int d, std::uint64_t seed) {
  if (spec == "uniform") return ShiftPrior::uniform(d);
  if (spec == "random") return ShiftPrior::random(d, seed);
  if (spec.starts_with("point:")) return ShiftPrior::point(d, parse_shift(spec.substr(6), spec));
  if (spec.starts_with("twopoint:")) {
    const auto body = spec.substr(9);
    const auto comma = body.find(',');
    if (comma == std::string_view::npos) throw ConfigError("twopoint prior needs two shifts: '" + std::string(spec) + "'");
    return ShiftPrior::two_point(d, parse_shift(body.substr(0, comma), spec), parse_shift(body.substr(comma + 1), spec));
  }
  throw ConfigError("unknown lattice prior '" + std::string(spec) + "' (expected uniform, point:X, twopoint:X1,X2, random)");
}

Eigen::VectorXcd random_register(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::VectorXcd v(d);
  for (int i = 0; i < d; ++i) {
    const double re = g(gen);
    const double im = g(gen);
    v[i] = cplx{re, im};
  }
  return v.normalized();
}

struct Scenario {
  std::string name;
  QuditPairState state;
  Eigen::VectorXcd input_relative;  ///< relative register before any entangling gate
};

std::vector<Scenario> way_scenarios(int d, std::uint64_t seed) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(d)};
  std::mt19937_64 gen(seq);
  std::vector<Scenario> out;

  const auto psi_r = random_register(d, gen);
  const auto psi_a = random_register(d, gen);
  out.push_back({"separable", QuditPairState::product(psi_r, psi_a), psi_r});

  Eigen::VectorXcd pair = Eigen::VectorXcd::Zero(d);
  pair[0] = pair[1] = 1.0;
  out.push_back({"sum-entangled", sum_gate(QuditPairState::product(pair, pair)), pair.normalized()});

  const Eigen::VectorXcd plus = Eigen::VectorXcd::Constant(d, 1.0 / std::sqrt(static_cast<double>(d)));
  Eigen::VectorXcd zero = Eigen::VectorXcd::Zero(d);
  zero[0] = 1.0;
  out.push_back({"max-entangled", sum_gate(QuditPairState::product(plus, zero)), plus});
  return out;
}

Table run_way(const WayArgs& a, const Common& common) {
  for (int d : a.dims) {
    if (d < 3 || d % 2 == 0) {
      throw ConfigError("--dim " + std::to_string(d) + ": lattice dimension must be odd and >= 3");
    }
    for (const auto& p : a.priors) (void)parse_shift_prior(p, d, common.seed);
  }

  Table t;
  t.command = "way-demo";
  t.config["dims"] = a.dims;
  t.config["priors"] = a.priors;
  echo_common(t.config, common);
  t.columns = {"d", "scenario", "prior", "relative_purity", "relative_fidelity_to_input"};
  for (int d : a.dims) {
    for (const auto& sc : way_scenarios(d, common.seed)) {
      for (const auto& p : a.priors) {
        const auto rho_r = reduced_relative(twirl_displacement(sc.state, parse_shift_prior(p, d, common.seed)));
        const double fid = fidelity_pure_mixed({Basis::lattice_single, sc.input_relative}, rho_r);
        t.rows.push_back({static_cast<long long>(d), sc.name, p, purity(rho_r), fid});
      }
    }
  }
  return t;
}

// ---------------------------------------------------------------- driver

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--output", c.output, "Table format")->check(CLI::IsMember({"csv", "json"}))->capture_default_str();
  sub->add_option("--out", c.out_path, "Output file (default stdout)");
  sub->add_option("--seed", c.seed, "Seed for random observables, states and priors")->capture_default_str();
}

int emit(const Table& t, const Common& c, std::ostream& out, std::ostream& err) {
  const std::string text = render(t, c.output);
  if (c.out_path.empty()) {
    out << text;
    return kOk;
  }
  std::ofstream f(c.out_path, std::ios::binary);
  if (!f) {
    err << "error: cannot open '" << c.out_path << "' for writing\n";
    return kConfigError;
  }
  f << text;
  return f ? kOk : kNumericalError;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Numerics for coherent-state reference frames and relative observables", "relframe"};
  app.require_subcommand(1);
  Common common;

  SweepArgs sweep;
  auto* sweep_cmd = app.add_subcommand("factorize-sweep", "Product-form fidelity of |alpha, beta> over a |beta| grid");
  sweep_cmd->add_option("--alpha", sweep.alpha, "|alpha|")->required()->check(CLI::NonNegativeNumber);
  sweep_cmd->add_option("--alpha-phase", sweep.alpha_phase, "phi_alpha (alpha = |alpha| e^{-i phi})")
      ->capture_default_str();
  sweep_cmd->add_option("--beta-list", sweep.beta_list, "Comma-separated |beta| values")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep_cmd->add_option("--beta-phase", sweep.beta_phase, "phi_beta")->capture_default_str();
  sweep.n1_opt = sweep_cmd->add_option("--n1-max", sweep.n1_max, "Mode-1 cutoff override")->check(CLI::NonNegativeNumber);
  sweep.n2_opt = sweep_cmd->add_option("--n2-max", sweep.n2_max, "Mode-2 cutoff override")->check(CLI::NonNegativeNumber);
  add_common(sweep_cmd, common);

  ContractArgs contract;
  auto* contract_cmd = app.add_subcommand("contract-overlap", "Spin vs Weyl-Heisenberg coherent-state overlap over N");
  contract_cmd->add_option("--z", contract.z, "|z|")->check(CLI::NonNegativeNumber)->capture_default_str();
  contract_cmd->add_option("--z-phase", contract.z_phase, "phase of z (z = |z| e^{-i phi})")->capture_default_str();
  contract_cmd->add_option("--n-list", contract.n_list, "Comma-separated spin sizes N")
      ->delimiter(',')
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  add_common(contract_cmd, common);

  TwirlArgs twirl;
  auto* twirl_cmd = app.add_subcommand("twirl-demo", "Prior-(in)dependence of expectations after phase averaging");
  twirl_cmd->add_option("--alpha", twirl.alpha, "|alpha|")->check(CLI::NonNegativeNumber)->capture_default_str();
  twirl_cmd->add_option("--alpha-phase", twirl.alpha_phase, "phi_alpha")->capture_default_str();
  twirl_cmd->add_option("--beta", twirl.beta, "|beta|")->check(CLI::NonNegativeNumber)->capture_default_str();
  twirl_cmd->add_option("--beta-phase", twirl.beta_phase, "phi_beta")->capture_default_str();
  twirl.n1_opt = twirl_cmd->add_option("--n1-max", twirl.n1_max, "Mode-1 cutoff override")->check(CLI::NonNegativeNumber);
  twirl.n2_opt = twirl_cmd->add_option("--n2-max", twirl.n2_max, "Mode-2 cutoff override")->check(CLI::NonNegativeNumber);
  twirl_cmd->add_option("--observables", twirl.observables, "Number of seeded commutant observables")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  twirl_cmd->add_option("--prior", twirl.priors, "Phase prior (repeatable)")->capture_default_str();
  add_common(twirl_cmd, common);

  WayArgs way;
  auto* way_cmd = app.add_subcommand("way-demo", "Displacement twirls on the Z_d x Z_d lattice");
  way_cmd->add_option("--dim", way.dims, "Comma-separated odd lattice dimensions")
      ->delimiter(',')
      ->check(CLI::Validator(
          [](std::string& s) -> std::string {
            int d = 0;
            const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), d);
            if (ec != std::errc{} || ptr != s.data() + s.size()) return "not an integer: " + s;
            if (d < 3 || d % 2 == 0) return "lattice dimension must be odd and >= 3 (got " + s + ")";
            return {};
          },
          "ODD>=3"))
      ->capture_default_str();
  way_cmd->add_option("--prior", way.priors, "Shift prior: uniform | point:X | twopoint:X1,X2 | random (repeatable)")
      ->capture_default_str();
  add_common(way_cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kConfigError;
  }

  try {
    Table t;
    if (*sweep_cmd) {
      t = run_sweep(sweep, common);
    } else if (*contract_cmd) {
      t = run_contract(contract, common);
    } else if (*twirl_cmd) {
      t = run_twirl(twirl, common);
    } else {
      t = run_way(way, common);
    }
    return emit(t, common, out, err);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kNumericalError;
  }
}

}  // namespace relframe::cli
