// Copyright 2026 The relframe Authors
// SPDX-License-Identifier: Apache-2.0

#include "relframe/phase_twirl.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <string>
#include <utility>

#include "relframe/errors.hpp"

namespace relframe {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double reduce_angle(double phi) {
  double r = std::fmod(phi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view text, std::string_view what) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (text.empty() || ec != std::errc{} || ptr != end || !std::isfinite(value)) {
    throw ConfigError("invalid number '" + std::string(text) + "' in " + std::string(what));
  }
  return value;
}

PriorGrid normalized_grid(std::vector<PriorPoint> points) {
  double total = 0.0;
  for (const auto& p : points) total += p.weight;
  for (auto& p : points) p.weight /= total;
  return PriorGrid(std::move(points));
}

// rho_ij *= g(n_i - n_j)
DensityMatrix dephase(Basis basis, Eigen::MatrixXcd rho, const std::vector<std::size_t>& numbers, const Prior& prior) {
  const Eigen::Index dim = rho.rows();

  if (std::holds_alternative<UniformPrior>(prior)) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      for (Eigen::Index i = 0; i < dim; ++i) {
        if (numbers[static_cast<std::size_t>(i)] != numbers[static_cast<std::size_t>(j)]) rho(i, j) = 0.0;
      }
    }
    return DensityMatrix(basis, std::move(rho));
  }

  const auto& grid = std::get<PriorGrid>(prior);
  const long span = static_cast<long>(numbers.empty() ? 0 : *std::max_element(numbers.begin(), numbers.end()));
  std::vector<cplx> g(static_cast<std::size_t>(2 * span + 1));
  for (long delta = -span; delta <= span; ++delta) g[static_cast<std::size_t>(delta + span)] = grid.characteristic(delta);
  for (Eigen::Index j = 0; j < dim; ++j) {
    const long nj = static_cast<long>(numbers[static_cast<std::size_t>(j)]);
    for (Eigen::Index i = 0; i < dim; ++i) {
      const long ni = static_cast<long>(numbers[static_cast<std::size_t>(i)]);
      rho(i, j) *= g[static_cast<std::size_t>(ni - nj + span)];
    }
  }
  return DensityMatrix(basis, std::move(rho));
}

DensityMatrix twirl_pure(Basis basis, const Eigen::VectorXcd& psi, const std::vector<std::size_t>& numbers,
                         const Prior& prior) {
  if (std::abs(psi.squaredNorm() - 1.0) > 1e-10) throw PreconditionError("twirl: input state is not normalized");
  return dephase(basis, psi * psi.adjoint(), numbers, prior);
}

}  // namespace

PriorGrid::PriorGrid(std::vector<PriorPoint> points) : points_(std::move(points)) {
  if (points_.empty()) throw PreconditionError("PriorGrid needs at least one point");
  double total = 0.0;
  double previous = -1.0;
  for (const auto& p : points_) {
    if (!std::isfinite(p.angle) || p.angle < 0.0 || p.angle >= kTwoPi) {
      throw PreconditionError("prior angle outside [0, 2 pi)");
    }
    if (p.angle <= previous) throw PreconditionError("prior angles must be strictly increasing");
    if (!std::isfinite(p.weight) || p.weight < 0.0) throw PreconditionError("prior weights must be nonnegative");
    previous = p.angle;
    total += p.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw PreconditionError("prior weights must sum to 1");
}

PriorGrid PriorGrid::point(double phi) { return PriorGrid({{reduce_angle(phi), 1.0}}); }

PriorGrid PriorGrid::two_point(double phi1, double phi2) {
  double a = reduce_angle(phi1);
  double b = reduce_angle(phi2);
  if (a == b) return point(a);
  if (b < a) std::swap(a, b);
  return PriorGrid({{a, 0.5}, {b, 0.5}});
}

PriorGrid PriorGrid::von_mises(double kappa, std::size_t resolution) {
  if (!std::isfinite(kappa) || kappa < 0.0) throw PreconditionError("von Mises kappa must be finite and >= 0");
  if (resolution == 0) throw PreconditionError("von Mises grid needs at least one angle");
  std::vector<PriorPoint> pts(resolution);
  for (std::size_t j = 0; j < resolution; ++j) {
    const double phi = kTwoPi * static_cast<double>(j) / static_cast<double>(resolution);
    pts[j] = {phi, std::exp(kappa * (std::cos(phi) - 1.0))};
  }
  return normalized_grid(std::move(pts));
}

PriorGrid PriorGrid::random(std::uint64_t seed, std::size_t count) {
  if (count == 0) throw PreconditionError("random prior needs at least one point");
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  std::uniform_real_distribution<double> weight(0.0, 1.0);
  std::vector<double> angles(count);
  for (auto& a : angles) a = angle(gen);
  std::sort(angles.begin(), angles.end());
  angles.erase(std::unique(angles.begin(), angles.end()), angles.end());
  std::vector<PriorPoint> pts;
  pts.reserve(angles.size());
  for (double a : angles) pts.push_back({a, weight(gen)});
  return normalized_grid(std::move(pts));
}

PriorGrid PriorGrid::from_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open prior grid file '" + path.string() + "'");
  std::vector<PriorPoint> pts;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw ConfigError("prior grid line " + std::to_string(line_no) + ": expected 'angle,weight'");
    }
    const std::string where = "prior grid line " + std::to_string(line_no);
    const double a = parse_double(row.substr(0, comma), where);
    const double w = parse_double(row.substr(comma + 1), where);
    if (a < 0.0 || a >= kTwoPi) throw ConfigError(where + ": angle must lie in [0, 2 pi)");
    if (w < 0.0) throw ConfigError(where + ": weight must be nonnegative");
    pts.push_back({a, w});
  }
  if (pts.empty()) throw ConfigError("prior grid file '" + path.string() + "' has no rows");
  std::sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.angle < y.angle; });
  for (std::size_t i = 1; i < pts.size(); ++i) {
    if (pts[i].angle == pts[i - 1].angle) throw ConfigError("prior grid file repeats an angle");
  }
  double total = 0.0;
  for (const auto& p : pts) total += p.weight;
  if (!(total > 0.0)) throw ConfigError("prior grid weights sum to zero");
  return normalized_grid(std::move(pts));
}

cplx PriorGrid::characteristic(long delta) const {
  cplx g{0.0};
  for (const auto& p : points_) g += p.weight * std::polar(1.0, -p.angle * static_cast<double>(delta));
  return g;
}

Prior parse_prior(std::string_view spec) {
  spec = trim(spec);
  if (spec == "uniform") return UniformPrior{};
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ConfigError("unknown prior '" + std::string(spec) + "'");
  const auto name = spec.substr(0, colon);
  const auto arg = spec.substr(colon + 1);
  const std::string where = "prior '" + std::string(spec) + "'";
  try {
    if (name == "point") return PriorGrid::point(parse_double(arg, where));
    if (name == "twopoint") {
      const auto comma = arg.find(',');
      if (comma == std::string_view::npos) throw ConfigError(where + ": expected twopoint:<phi1>,<phi2>");
      return PriorGrid::two_point(parse_double(arg.substr(0, comma), where),
                                  parse_double(arg.substr(comma + 1), where));
    }
    if (name == "vonmises") return PriorGrid::von_mises(parse_double(arg, where));
    if (name == "grid") return PriorGrid::from_csv(std::filesystem::path(std::string(trim(arg))));
  } catch (const PreconditionError& e) {
    throw ConfigError(where + ": " + e.what());
  }
  throw ConfigError("unknown prior '" + std::string(spec) + "'");
}

DensityMatrix twirl_single_mode(const FockVector& psi, const Prior& prior) {
  std::vector<std::size_t> numbers(psi.n_max() + 1);
  for (std::size_t n = 0; n < numbers.size(); ++n) numbers[n] = n;
  return twirl_pure(Basis::fock, psi.amplitudes(), numbers, prior);
}

DensityMatrix twirl_two_mode(const TwoModeState& state, const Prior& prior) {
  const auto v = block_vector(state);
  return twirl_pure(Basis::block, v.amplitudes, BlockLayout{state.n1_max() + state.n2_max()}.total_numbers(),
                    prior);
}

DensityMatrix twirl_density(const DensityMatrix& rho, const Prior& prior) {
  const auto dim = static_cast<std::size_t>(rho.dim());
  std::vector<std::size_t> numbers;
  if (rho.basis() == Basis::fock) {
    numbers.resize(dim);
    for (std::size_t n = 0; n < dim; ++n) numbers[n] = n;
  } else if (rho.basis() == Basis::block) {
    std::size_t n_max = 0;
    while (BlockLayout{n_max}.dimension() < dim) ++n_max;
    if (BlockLayout{n_max}.dimension() != dim) throw DimensionError("twirl_density: not a block-triangle dimension");
    numbers = BlockLayout{n_max}.total_numbers();
  } else {
    throw BasisError("twirl_density needs a fock or block density matrix");
  }
  return dephase(rho.basis(), rho.matrix(), numbers, prior);
}

Observable::Observable(Basis basis, Eigen::MatrixXcd matrix) : basis_(basis), matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) throw DimensionError("observable must be square");
  const double scale = std::max(1.0, matrix_.cwiseAbs().maxCoeff());
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw PreconditionError("observable must be Hermitian");
  }
}

Observable random_commutant_observable(std::size_t n_max, std::uint64_t seed) {
  const BlockLayout layout{n_max};
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t n = 0; n <= n_max; ++n) {
    const auto off = static_cast<Eigen::Index>(BlockLayout::offset(n));
    const auto size = static_cast<Eigen::Index>(n + 1);
    for (Eigen::Index i = 0; i < size; ++i) {
      m(off + i, off + i) = normal(gen);
      for (Eigen::Index j = i + 1; j < size; ++j) {
        const cplx z(normal(gen), normal(gen));
        m(off + i, off + j) = z;
        m(off + j, off + i) = std::conj(z);
      }
    }
  }
  return Observable(Basis::block, std::move(m));
}

Observable mode2_quadrature(std::size_t n_max) {
  const BlockLayout layout{n_max};
  const auto dim = static_cast<Eigen::Index>(layout.dimension());
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (std::size_t n = 1; n <= n_max; ++n) {
    for (std::size_t k = 0; k < n; ++k) {
      // a2 |n1 = k, n2 = n - k> = sqrt(n - k) |k, n - k - 1>
      const auto from = static_cast<Eigen::Index>(BlockLayout::index(n, k));
      const auto to = static_cast<Eigen::Index>(BlockLayout::index(n - 1, k));
      const double c = std::sqrt(static_cast<double>(n - k));
      m(to, from) = c;
      m(from, to) = c;
    }
  }
  return Observable(Basis::block, std::move(m));
}

double block_commutator_norm(const Observable& obs) {
  if (obs.basis() != Basis::block) throw BasisError("block_commutator_norm needs a block-basis observable");
  const auto dim = static_cast<std::size_t>(obs.dim());
  std::size_t n_max = 0;
  while (BlockLayout{n_max}.dimension() < dim) ++n_max;
  if (BlockLayout{n_max}.dimension() != dim) throw DimensionError("observable size is not a block triangle");
  const auto numbers = BlockLayout{n_max}.total_numbers();
  std::vector<double> per_block(n_max + 1, 0.0);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < dim; ++i) {
      if (numbers[i] == numbers[j]) continue;
      const double w = std::norm(obs.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      per_block[numbers[i]] += w;
      per_block[numbers[j]] += w;
    }
  }
  double total = 0.0;
  for (double s : per_block) total += std::sqrt(s);
  return total;
}

double expectation(const Observable& obs, const DensityMatrix& rho) {
  if (obs.basis() != rho.basis()) throw BasisError("expectation: basis mismatch");
  if (obs.dim() != rho.dim()) throw DimensionError("expectation: dimension mismatch");
  const cplx t = obs.matrix().cwiseProduct(rho.matrix().transpose()).sum();
  if (std::abs(t.imag()) > 1e-10) throw NumericalError("expectation: imaginary residue above 1e-10");
  return t.real();
}

double uniform_twirl_hs_distance(const TwoModeState& a, const TwoModeState& b) {
  if (a.cutoffs() != b.cutoffs()) throw DimensionError("uniform_twirl_hs_distance: grids differ");
  const std::size_t n1_max = a.n1_max();
  const std::size_t n2_max = a.n2_max();
  double total = 0.0;
  for (std::size_t n = 0; n <= n1_max + n2_max; ++n) {
    const std::size_t k_lo = n > n2_max ? n - n2_max : 0;
    const std::size_t k_hi = std::min(n, n1_max);
    for (std::size_t k = k_lo; k <= k_hi; ++k) {
      const cplx ak = a.amplitude(k, n - k);
      const cplx bk = b.amplitude(k, n - k);
      for (std::size_t q = k_lo; q <= k_hi; ++q) {
        total += std::norm(ak * std::conj(a.amplitude(q, n - q)) - bk * std::conj(b.amplitude(q, n - q)));
      }
    }
  }
  return std::sqrt(total);
}

}  // namespace relframe
