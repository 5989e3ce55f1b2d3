#include "qha/tf.hpp"

#include "dft.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qha {
namespace {

constexpr int kPeriodizationWraps = 3;

// Periodized samples of the first `count` Hermite functions
// psi_k(x) = 2^{1/4} / sqrt(2^k k!) H_k(sqrt(2 pi) x) e^{-pi x^2}, via the
// three-term recurrence of the normalized functions.
std::vector<CVector> sampled_hermite(int d, int count) {
  std::vector<CVector> out(count, CVector::Zero(d));
  const double side = std::sqrt(static_cast<double>(d));
  const double root2pi = std::sqrt(2.0 * std::numbers::pi);
  std::vector<double> psi(count);
  for (int j = 0; j < d; ++j) {
    const double x0 = (j - d / 2) / side;
    for (int w = -kPeriodizationWraps; w <= kPeriodizationWraps; ++w) {
      const double x = x0 + w * side;
      const double y = root2pi * x;
      psi[0] = std::pow(2.0, 0.25) * std::exp(-std::numbers::pi * x * x);
      if (count > 1) psi[1] = std::sqrt(2.0) * y * psi[0];
      for (int k = 1; k + 1 < count; ++k) {
        psi[k + 1] = std::sqrt(2.0 / (k + 1)) * y * psi[k] - std::sqrt(static_cast<double>(k) / (k + 1)) * psi[k - 1];
      }
      for (int k = 0; k < count; ++k) out[k](j) += psi[k];
    }
  }
  return out;
}

}  // namespace

Signal tf_shift(const Signal& f, GridIndex z) {
  const int d = f.dim();
  if (d == 0) throw DimensionError("tf_shift: empty signal");
  const PhaseGrid grid(d);
  const int m = grid.wrap(z.m);
  const int n = grid.wrap(z.n);
  CVector out(d);
  const double step = 2.0 * std::numbers::pi / d;
  for (int x = 0; x < d; ++x) {
    // x * n is reduced mod d so the phase argument stays small.
    const double phase = step * static_cast<double>((static_cast<long long>(x) * n) % d);
    out(x) = std::polar(1.0, phase) * f[grid.wrap(x - m)];
  }
  return Signal(std::move(out));
}

ComplexGridFunction stft(const Signal& f, const Signal& g) {
  require_same_dim(f, g, "stft");
  const int d = f.dim();
  const PhaseGrid grid(d);
  ComplexGridFunction out(grid);
  CVector row(d);
  for (int m = 0; m < d; ++m) {
    for (int x = 0; x < d; ++x) row(x) = f[x] * std::conj(g[grid.wrap(x - m)]);
    detail::dft(row.data(), d, detail::Direction::forward);
    out.values().row(m) = row.transpose();
  }
  return out;
}

GridFunction spectrogram(const Signal& f, const Signal& g) {
  const auto v = stft(f, g);
  return GridFunction(v.grid(), v.values().cwiseAbs2());
}

Signal gaussian_window(int d) {
  if (d < 4) throw std::invalid_argument("gaussian_window: d must be at least 4");
  return Signal(sampled_hermite(d, 1).front()).normalized();
}

std::vector<Signal> hermite_basis(int d, int count) {
  if (d < 4) throw std::invalid_argument("hermite_basis: d must be at least 4");
  if (count < 0 || count > d) {
    throw std::invalid_argument("hermite_basis: count must lie in [0, d], got " + std::to_string(count));
  }
  auto raw = sampled_hermite(d, count);
  std::vector<Signal> basis;
  basis.reserve(count);
  for (int k = 0; k < count; ++k) {
    CVector v = raw[k];
    // Two Gram-Schmidt sweeps keep orthogonality at round-off level.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (const auto& b : basis) v -= b.values().dot(v) * b.values();
    }
    const double n = v.norm();
    if (n < 1e-8 * raw[k].norm() || n == 0.0) {
      throw NumericalError("hermite_basis: order " + std::to_string(k) + " is not resolvable at d=" + std::to_string(d));
    }
    basis.emplace_back(v / n);
  }
  return basis;
}

Signal hermite(int d, int order) {
  if (order < 0 || order >= d) {
    throw std::invalid_argument("hermite: order must lie in [0, d), got " + std::to_string(order));
  }
  return hermite_basis(d, order + 1).back();
}

double grid_integrate(const GridFunction& f) { return f.grid().cell_measure() * f.values().sum(); }

Complex grid_integrate(const ComplexGridFunction& f) {
  return f.grid().cell_measure() * f.values().sum();
}

GridFunction grid_convolve(const GridFunction& a, const GridFunction& b) {
  if (!(a.grid() == b.grid())) throw DimensionError("grid_convolve: grid mismatch");
  const int d = a.dim();
  CMatrix fa = a.values().cast<Complex>();
  CMatrix fb = b.values().cast<Complex>();
  detail::dft2(fa, detail::Direction::forward);
  detail::dft2(fb, detail::Direction::forward);
  CMatrix prod = fa.cwiseProduct(fb);
  detail::dft2(prod, detail::Direction::backward);
  // 1/d^2 undoes the unnormalized transform pair; 1/d is the cell measure.
  const double scale = 1.0 / (static_cast<double>(d) * d * d);
  return GridFunction(a.grid(), prod.real() * scale);
}

GridFunction reflect(const GridFunction& f) {
  const auto& grid = f.grid();
  GridFunction out(grid);
  for (int m = 0; m < grid.dim(); ++m) {
    for (int n = 0; n < grid.dim(); ++n) out.values()(m, n) = f(-m, -n);
  }
  return out;
}

GridFunction constant_grid(const PhaseGrid& grid, double value) {
  return GridFunction(grid, RMatrix::Constant(grid.dim(), grid.dim(), value));
}

}  // namespace qha
