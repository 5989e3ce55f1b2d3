#include "qha/datasets.hpp"

#include "qha/tf.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

namespace qha {
namespace {

void require_positive_count(int count, const char* what) {
  if (count < 1) throw std::invalid_argument(std::string(what) + ": count must be at least 1");
}

std::string describe(const char* family, int count, int d) {
  std::ostringstream os;
  os << family << "(N=" << count << ",d=" << d << ")";
  return os.str();
}

CVector complex_gaussian(int d, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(d);
  for (int i = 0; i < d; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

}  // namespace

DataSet normalize_dataset(const DataSet& data) {
  if (data.empty()) throw std::invalid_argument("normalize_dataset: empty data set");
  const double energy = data.total_energy();
  if (!(energy > 0.0)) throw std::invalid_argument("normalize_dataset: all-zero data set");
  const double scale = 1.0 / std::sqrt(energy);
  std::vector<Signal> out;
  out.reserve(data.size());
  for (const auto& s : data.signals()) out.push_back(s.scaled(scale));
  return DataSet(std::move(out), data.seed(), data.label());
}

std::vector<ChirpDraw> draw_chirp_parameters(int count, int d, std::uint64_t seed,
                                             const ChirpParams& params) {
  require_positive_count(count, "draw_chirp_parameters");
  if (params.rate_min > params.rate_max) throw std::invalid_argument("chirp rate range is empty");
  if (params.base_min > params.base_max || params.base_sd <= 0.0) {
    throw std::invalid_argument("chirp base frequency range is invalid");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> base(params.base_mean, params.base_sd);
  std::uniform_real_distribution<double> rate(params.rate_min, params.rate_max);
  std::uniform_int_distribution<int> rotation(0, d - 1);
  std::vector<ChirpDraw> draws;
  draws.reserve(count);
  for (int i = 0; i < count; ++i) {
    double f0 = base(rng);
    // Rejection keeps the truncated normal exact.
    while (f0 < params.base_min || f0 > params.base_max) f0 = base(rng);
    const double r = params.rate_min == params.rate_max ? params.rate_min : rate(rng);
    draws.push_back({f0, r, rotation(rng)});
  }
  return draws;
}

RVector bartlett_hann(int d) {
  RVector w(d);
  if (d == 1) {
    w(0) = 1.0;
    return w;
  }
  for (int j = 0; j < d; ++j) {
    const double x = static_cast<double>(j) / (d - 1);
    w(j) = 0.62 - 0.48 * std::abs(x - 0.5) - 0.38 * std::cos(2.0 * std::numbers::pi * x);
  }
  return w;
}

DataSet gen_chirps(int count, int d, std::uint64_t seed, const ChirpParams& params) {
  const auto draws = draw_chirp_parameters(count, d, seed, params);
  const RVector window = bartlett_hann(d);
  const PhaseGrid grid(d);
  std::vector<Signal> signals;
  signals.reserve(count);
  for (const auto& draw : draws) {
    CVector v(d);
    for (int j = 0; j < d; ++j) {
      const double t = static_cast<double>(j) / d;
      const double phase = 2.0 * std::numbers::pi * (draw.base_frequency * t + 0.5 * draw.rate * t * t);
      v(j) = window(grid.wrap(j - draw.rotation)) * std::polar(1.0, phase);
    }
    signals.emplace_back(std::move(v));
  }
  return normalize_dataset(DataSet(std::move(signals), seed, describe("chirps", count, d)));
}

HermitianOperator gen_hermite_pair_state(double t, const Signal& g, const Signal& h) {
  if (!(t >= 0.0 && t <= 1.0)) throw std::invalid_argument("gen_hermite_pair_state: t must lie in [0, 1]");
  require_same_dim(g, h, "gen_hermite_pair_state");
  const CVector& a = g.values();
  const CVector& b = h.values();
  return HermitianOperator((1.0 - t) * a * a.adjoint() + t * b * b.adjoint());
}

LocalComponentSet gen_local_components(int count, int d, std::uint64_t seed,
                                       const LocalComponentParams& params) {
  require_positive_count(count, "gen_local_components");
  if (!(params.noise_energy >= 0.0 && params.noise_energy < 1.0)) {
    throw std::invalid_argument("gen_local_components: noise_energy must lie in [0, 1)");
  }
  if (params.spread < 0.0) throw std::invalid_argument("gen_local_components: spread must be non-negative");

  const PhaseGrid grid(d);
  std::vector<GridIndex> candidates;
  const int reach = static_cast<int>(std::floor(params.spread / grid.cell_side() + 1e-9));
  for (int m = -reach; m <= reach; ++m) {
    for (int n = -reach; n <= reach; ++n) candidates.push_back({grid.wrap(m), grid.wrap(n)});
  }

  const Signal g = gaussian_window(d);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  const double coefficient = std::sqrt(1.0 - params.noise_energy);

  LocalComponentSet out;
  std::vector<Signal> signals;
  for (int i = 0; i < count; ++i) {
    const GridIndex z = candidates[pick(rng)];
    const Signal atom = tf_shift(g, z);
    Complex c = coefficient;
    CVector f = c * atom.values();
    if (params.noise_energy > 0.0) {
      if (params.random_phase) c = std::polar(coefficient, angle(rng));
      f = c * atom.values();
      CVector noise = complex_gaussian(d, rng);
      noise -= atom.values().dot(noise) * atom.values();
      f += std::sqrt(params.noise_energy) * noise / noise.norm();
    }
    out.shifts.push_back(z);
    signals.emplace_back(std::move(f));
  }
  out.data = normalize_dataset(DataSet(std::move(signals), seed, describe("local_components", count, d)));
  return out;
}

double default_tf_weight(double t, double xi) {
  const double r = std::hypot(t, xi);
  return std::sin(2.0 * std::numbers::pi * r) / ((1.0 + r) * (1.0 + r));
}

std::vector<LatticePoint> integer_lattice(const PhaseGrid& grid) {
  const double half = 0.5 * grid.side_length();
  const int reach = static_cast<int>(std::floor(half));
  std::vector<LatticePoint> points;
  for (int k = -reach; k <= reach; ++k) {
    // Keep one representative per cell when the lattice touches the seam.
    if (k <= -half + 1e-12) continue;
    for (int l = -reach; l <= reach; ++l) {
      if (l <= -half + 1e-12) continue;
      points.push_back({{grid.index_of(k), grid.index_of(l)}, static_cast<double>(k), static_cast<double>(l)});
    }
  }
  return points;
}

DataSet gen_random_tf_weighted(int count, int d, std::uint64_t seed, const PhaseWeight& weight) {
  require_positive_count(count, "gen_random_tf_weighted");
  const PhaseGrid grid(d);
  const Signal g = gaussian_window(d);
  const auto lattice = integer_lattice(grid);
  std::vector<Signal> atoms;
  std::vector<double> weights;
  for (const auto& p : lattice) {
    atoms.push_back(tf_shift(g, p.cell));
    weights.push_back(weight(p.t, p.xi));
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::vector<Signal> signals;
  signals.reserve(count);
  for (int i = 0; i < count; ++i) {
    CVector f = CVector::Zero(d);
    for (std::size_t k = 0; k < atoms.size(); ++k) {
      const double c = uniform(rng);
      if (weights[k] != 0.0) f += (c * weights[k]) * atoms[k].values();
    }
    signals.emplace_back(std::move(f));
  }
  return normalize_dataset(DataSet(std::move(signals), seed, describe("tf_weighted", count, d)));
}

std::vector<LatticePoint> lattice_in_rect(const PhaseGrid& grid, const Rect& rect) {
  if (rect.width < 0.0 || rect.height < 0.0) throw std::invalid_argument("rectangle sides must be non-negative");
  std::vector<LatticePoint> inside;
  for (const auto& p : integer_lattice(grid)) {
    if (std::abs(p.t - rect.center_t) <= 0.5 * rect.width + 1e-12 &&
        std::abs(p.xi - rect.center_xi) <= 0.5 * rect.height + 1e-12) {
      inside.push_back(p);
    }
  }
  return inside;
}

DataSet gen_gaussian_combos(int count, int d, std::uint64_t seed, const Rect& rect, int atoms) {
  require_positive_count(count, "gen_gaussian_combos");
  if (atoms < 1) throw std::invalid_argument("gen_gaussian_combos: atoms must be at least 1");
  const PhaseGrid grid(d);
  const auto lattice = lattice_in_rect(grid, rect);
  if (lattice.empty()) throw std::invalid_argument("gen_gaussian_combos: no lattice point inside the rectangle");
  const Signal g = gaussian_window(d);
  std::vector<Signal> shifted;
  for (const auto& p : lattice) shifted.push_back(tf_shift(g, p.cell));

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, lattice.size() - 1);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<Signal> signals;
  signals.reserve(count);
  for (int i = 0; i < count; ++i) {
    CVector f = CVector::Zero(d);
    for (int l = 0; l < atoms; ++l) {
      const std::size_t k = pick(rng);
      const double re = normal(rng);
      const double im = normal(rng);
      f += Complex(re, im) * shifted[k].values();
    }
    signals.emplace_back(std::move(f));
  }
  return normalize_dataset(DataSet(std::move(signals), seed, describe("gaussian_combos", count, d)));
}

DataSet gen_random_signals(int count, int d, std::uint64_t seed) {
  require_positive_count(count, "gen_random_signals");
  std::mt19937_64 rng(seed);
  std::vector<Signal> signals;
  for (int i = 0; i < count; ++i) signals.emplace_back(complex_gaussian(d, rng));
  return normalize_dataset(DataSet(std::move(signals), seed, describe("random", count, d)));
}

}  // namespace qha
