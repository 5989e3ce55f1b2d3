#pragma once

// Generators for the data set families used in the experiments. Every
// generator is a pure function of its parameters and seed.

#include "qha/types.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace qha {

/// Rescale globally so that sum_i ||f_i||^2 = 1.
DataSet normalize_dataset(const DataSet& data);

struct ChirpParams {
  double base_mean = 50.0;  // frequency bins, i.e. Hz for a 1 s signal of d samples
  double base_sd = 10.0;
  double base_min = 30.0;
  double base_max = 65.0;
  double rate_min = 0.0;  // sweep in bins per signal duration
  double rate_max = 20.0;
};

struct ChirpDraw {
  double base_frequency;
  double rate;
  int rotation;
};

/// Random chirp parameters: truncated-normal base frequency, uniform rate and
/// uniform cyclic envelope rotation.
std::vector<ChirpDraw> draw_chirp_parameters(int count, int d, std::uint64_t seed,
                                             const ChirpParams& params = {});

/// Bartlett-Hann window of length d.
RVector bartlett_hann(int d);

/// Complex chirps e^{2 pi i (f0 t + r t^2 / 2)}, t = j/d, under cyclically
/// rotated Bartlett-Hann envelopes; normalized as a set.
DataSet gen_chirps(int count, int d, std::uint64_t seed, const ChirpParams& params = {});

/// S_t = (1 - t) g (x) g + t h (x) h.
HermitianOperator gen_hermite_pair_state(double t, const Signal& g, const Signal& h);

struct LocalComponentParams {
  double noise_energy = 0.0;  // |c_i|^2 = 1 - noise_energy, ||f~_i||^2 = noise_energy
  double spread = 0.5;        // shifts z_i drawn from cells in [-spread, spread]^2 (phase units)
  bool random_phase = true;   // random phase of c_i when noise_energy > 0
};

struct LocalComponentSet {
  DataSet data;
  std::vector<GridIndex> shifts;
};

/// f_i = c_i pi(z_i) g + f~_i with f~_i orthogonal to pi(z_i) g.
LocalComponentSet gen_local_components(int count, int d, std::uint64_t seed,
                                       const LocalComponentParams& params = {});

/// Weight on phase space coordinates (t, xi).
using PhaseWeight = std::function<double(double, double)>;

/// sin(2 pi r) (1 + r)^{-2} with r = |z|.
double default_tf_weight(double t, double xi);

/// Integer lattice points (phase units, spacing 1) that fit on the torus,
/// mapped to their nearest cells, with their phase coordinates.
struct LatticePoint {
  GridIndex cell;
  double t;
  double xi;
};
std::vector<LatticePoint> integer_lattice(const PhaseGrid& grid);

/// f_i = sum_lambda c^i_lambda w(lambda) pi(lambda) g, c uniform on [0, 1).
DataSet gen_random_tf_weighted(int count, int d, std::uint64_t seed,
                               const PhaseWeight& weight = default_tf_weight);

struct Rect {
  double width = 2.1875;   // time extent, phase units
  double height = 0.3125;  // frequency extent, phase units
  double center_t = 0.0;
  double center_xi = 0.0;
};

/// Lattice points of `integer_lattice` inside the closed rectangle.
std::vector<LatticePoint> lattice_in_rect(const PhaseGrid& grid, const Rect& rect);

/// f_i = sum_l c^i_l pi(lambda^i_l) g with complex Gaussian c and lambda drawn
/// uniformly (with replacement) from the lattice points inside `rect`.
DataSet gen_gaussian_combos(int count, int d, std::uint64_t seed, const Rect& rect = {},
                            int atoms = 3);

/// Random complex Gaussian vectors, normalized as a set (test and bounds workloads).
DataSet gen_random_signals(int count, int d, std::uint64_t seed);

}  // namespace qha
