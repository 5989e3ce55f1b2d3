#pragma once

// Time-frequency primitives on the finite phase space Z_d x Z_d.

#include "qha/types.hpp"

#include <vector>

namespace qha {

/// pi(z) f (x) = e^{2 pi i x n / d} f(x - m mod d).
Signal tf_shift(const Signal& f, GridIndex z);

/// V_g f(m, n) = sum_x f(x) conj(g(x - m)) e^{-2 pi i x n / d} = <f, pi(m, n) g>.
/// One length-d FFT per time lag m.
ComplexGridFunction stft(const Signal& f, const Signal& g);

/// |V_g f|^2.
GridFunction spectrogram(const Signal& f, const Signal& g);

/// Periodized samples of 2^{1/4} e^{-pi x^2} on x = (j - d/2)/sqrt(d), unit norm.
Signal gaussian_window(int d);

/// Sampled Hermite function of the given order, re-orthonormalized against
/// all lower orders.
Signal hermite(int d, int order);

/// Orders 0 .. count-1 in one pass.
std::vector<Signal> hermite_basis(int d, int count);

/// Integral over the torus: cell_measure * sum of values.
double grid_integrate(const GridFunction& f);
Complex grid_integrate(const ComplexGridFunction& f);

/// Cyclic convolution (a * b)(z) = cell_measure * sum_{z'} a(z') b(z - z').
GridFunction grid_convolve(const GridFunction& a, const GridFunction& b);

/// f(-z).
GridFunction reflect(const GridFunction& f);

/// Constant function on the whole torus.
GridFunction constant_grid(const PhaseGrid& grid, double value);

}  // namespace qha
