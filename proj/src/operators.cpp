#include "qha/operators.hpp"

#include "dft.hpp"
#include "qha/tf.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

namespace qha {
namespace {

void require_square_same(const CMatrix& a, const CMatrix& b, const char* what) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw DimensionError(std::string(what) + ": operators must be square of equal size");
  }
}

void dft_columns(CMatrix& m, detail::Direction dir) {
  const int n = static_cast<int>(m.rows());
  for (Eigen::Index c = 0; c < m.cols(); ++c) detail::dft(m.col(c).data(), n, dir);
}

Eigen::Index largest_component(const CVector& v) {
  Eigen::Index best = 0;
  double best_abs = -1.0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    // Strict comparison with a relative margin keeps the first of near-equal maxima.
    const double a = std::abs(v(i));
    if (a > best_abs * (1.0 + 1e-12) + 1e-300) {
      best_abs = a;
      best = i;
    }
  }
  return best;
}

}  // namespace

CMatrix tensor_product(const Signal& f, const Signal& g) {
  require_same_dim(f, g, "tensor_product");
  return f.values() * g.values().adjoint();
}

HermitianOperator rank_one(const Signal& f) { return HermitianOperator(tensor_product(f, f)); }

HermitianOperator data_operator(const DataSet& data) {
  if (data.empty()) throw std::invalid_argument("data_operator: empty data set");
  if (!data.is_normalized(1e-10)) {
    throw std::invalid_argument("data_operator: data set is not normalized (total energy " +
                                std::to_string(data.total_energy()) + ")");
  }
  const int d = data.dim();
  CMatrix columns(d, static_cast<Eigen::Index>(data.size()));
  for (std::size_t i = 0; i < data.size(); ++i) columns.col(static_cast<Eigen::Index>(i)) = data.signals()[i].values();
  return HermitianOperator(columns * columns.adjoint());
}

CMatrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

SpectralDecomposition spectral_decompose(const HermitianOperator& a, double clamp_tolerance) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a.matrix());
  if (solver.info() != Eigen::Success) throw NumericalError("spectral_decompose: eigensolver did not converge");
  const int d = a.dim();
  const RVector& ascending = solver.eigenvalues();
  const CMatrix& vectors = solver.eigenvectors();

  const double scale = d ? ascending.cwiseAbs().maxCoeff() : 0.0;
  const double floor = clamp_tolerance * scale;

  std::vector<Eigen::Index> anchor(d);
  std::vector<double> clamped(d);
  CMatrix fixed(d, d);
  for (int k = 0; k < d; ++k) {
    CVector v = vectors.col(k);
    anchor[k] = largest_component(v);
    const Complex c = v(anchor[k]);
    v *= std::conj(c) / std::abs(c);
    v(anchor[k]) = std::abs(v(anchor[k]));
    fixed.col(k) = v;
    double lambda = ascending(k);
    if (lambda < 0.0) {
      if (lambda < -floor) {
        throw NumericalError("spectral_decompose: eigenvalue " + std::to_string(lambda) +
                             " below clamp tolerance for a positive operator");
      }
      lambda = 0.0;
    }
    clamped[k] = lambda;
  }

  // Descending; exactly equal eigenvalues (including clamped zeros) are ordered by anchor index.
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    if (clamped[i] != clamped[j]) return clamped[i] > clamped[j];
    return anchor[i] != anchor[j] ? anchor[i] < anchor[j] : i > j;
  });

  SpectralDecomposition out;
  out.clamp_tolerance = clamp_tolerance;
  out.eigenvalues.resize(d);
  out.eigenvectors.resize(d, d);
  for (int k = 0; k < d; ++k) {
    out.eigenvalues(k) = clamped[order[k]];
    out.eigenvectors.col(k) = fixed.col(order[k]);
  }
  return out;
}

RVector hermitian_eigenvalues(const CMatrix& a) {
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(a, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NumericalError("hermitian_eigenvalues: eigensolver did not converge");
  return solver.eigenvalues().reverse();
}

void require_positive(const HermitianOperator& a, const char* what, double tolerance) {
  const RVector ev = hermitian_eigenvalues(a.matrix());
  if (ev.size() == 0) return;
  const double scale = ev.cwiseAbs().maxCoeff();
  if (ev.minCoeff() < -tolerance * scale) {
    throw std::invalid_argument(std::string(what) + ": operator is not positive (min eigenvalue " +
                                std::to_string(ev.minCoeff()) + ")");
  }
}

double trace_norm(const CMatrix& a) { return hermitian_eigenvalues(a).cwiseAbs().sum(); }

HermitianOperator operator_shift(const HermitianOperator& s, GridIndex z) {
  const int d = s.dim();
  const PhaseGrid grid(d);
  const int m = grid.wrap(z.m);
  const int n = grid.wrap(z.n);
  const double step = 2.0 * std::numbers::pi / d;
  CVector phase(d);
  for (int x = 0; x < d; ++x) phase(x) = std::polar(1.0, step * static_cast<double>((static_cast<long long>(x) * n) % d));
  CMatrix out(d, d);
  for (int y = 0; y < d; ++y) {
    for (int x = 0; x < d; ++x) {
      out(x, y) = phase(x) * std::conj(phase(y)) * s.matrix()(grid.wrap(x - m), grid.wrap(y - m));
    }
  }
  return HermitianOperator(std::move(out));
}

CMatrix parity(const CMatrix& s) {
  const int d = static_cast<int>(s.rows());
  CMatrix out(d, d);
  for (int y = 0; y < d; ++y) {
    for (int x = 0; x < d; ++x) out(x, y) = s((d - x) % d, (d - y) % d);
  }
  return out;
}

HermitianOperator parity(const HermitianOperator& s) { return HermitianOperator(parity(s.matrix())); }

// tr(A alpha_z(B)) = sum_u e^{2 pi i u n/d} G(m, u) with
// G(m, u) = sum_y A(y, y+u) B(y+u-m, y-m), a cyclic correlation in y per lag u.
ComplexGridFunction trace_shift(const CMatrix& a, const CMatrix& b) {
  require_square_same(a, b, "trace_shift");
  const int d = static_cast<int>(a.rows());
  CMatrix da(d, d);
  CMatrix db(d, d);
  for (int u = 0; u < d; ++u) {
    for (int y = 0; y < d; ++y) {
      da(y, u) = a(y, (y + u) % d);
      db(y, u) = b((y + u) % d, y);
    }
  }
  dft_columns(da, detail::Direction::forward);
  dft_columns(db, detail::Direction::forward);
  CMatrix g(d, d);
  for (int u = 0; u < d; ++u) {
    for (int k = 0; k < d; ++k) g(k, u) = da(k, u) * db((d - k) % d, u);
  }
  dft_columns(g, detail::Direction::backward);
  // g(m, u) now holds d * G(m, u); the lag sum is a backward DFT along u.
  CMatrix gt = g.transpose();
  dft_columns(gt, detail::Direction::backward);
  const PhaseGrid grid(d);
  return ComplexGridFunction(grid, gt.transpose() / static_cast<double>(d));
}

// (F * S)(y+u, y) = (1/d) sum_m Fhat(m, u) S(y+u-m, y-m), Fhat(m, u) = sum_n F(m, n) e^{2 pi i u n/d}.
HermitianOperator fn_op_convolve(const GridFunction& f, const HermitianOperator& s) {
  const int d = s.dim();
  if (f.dim() != d) throw DimensionError("fn_op_convolve: grid and operator dimensions differ");
  CMatrix fhat = f.values().transpose().cast<Complex>();  // (n, m)
  dft_columns(fhat, detail::Direction::backward);         // (u, m)
  CMatrix fu = fhat.transpose();                          // (m, u)
  dft_columns(fu, detail::Direction::forward);            // (k, u)
  CMatrix su(d, d);
  for (int u = 0; u < d; ++u) {
    for (int w = 0; w < d; ++w) su(w, u) = s.matrix()((w + u) % d, w);
  }
  dft_columns(su, detail::Direction::forward);
  CMatrix prod = fu.cwiseProduct(su);
  dft_columns(prod, detail::Direction::backward);  // d * result(y+u, y) at (y, u)
  const double scale = 1.0 / (static_cast<double>(d) * d);
  CMatrix out(d, d);
  for (int u = 0; u < d; ++u) {
    for (int y = 0; y < d; ++y) out((y + u) % d, y) = prod(y, u) * scale;
  }
  return HermitianOperator(std::move(out), 1e-8);
}

GridFunction op_op_convolve(const HermitianOperator& s, const HermitianOperator& t) {
  if (s.dim() != t.dim()) throw DimensionError("op_op_convolve: dimension mismatch");
  const auto c = trace_shift(s.matrix(), parity(t.matrix()));
  return GridFunction(c.grid(), c.values().real());
}

GridFunction total_correlation(const HermitianOperator& s) {
  if (std::abs(s.trace() - 1.0) > 1e-8) {
    throw std::invalid_argument("total_correlation: trace must be 1, got " + std::to_string(s.trace()));
  }
  require_positive(s, "total_correlation");
  const auto c = trace_shift(s.matrix(), s.matrix());
  return GridFunction(c.grid(), c.values().real());
}

GridFunction total_correlation_spectral(const HermitianOperator& s, double rank_cut) {
  if (std::abs(s.trace() - 1.0) > 1e-8) {
    throw std::invalid_argument("total_correlation_spectral: trace must be 1, got " + std::to_string(s.trace()));
  }
  const auto sd = spectral_decompose(s);
  const int d = s.dim();
  const double cut = rank_cut * sd.eigenvalues(0);
  std::vector<Signal> h;
  std::vector<double> lambda;
  for (int k = 0; k < d; ++k) {
    if (sd.eigenvalues(k) > cut && sd.eigenvalues(k) > 0.0) {
      h.emplace_back(sd.eigenvectors.col(k));
      lambda.push_back(sd.eigenvalues(k));
    }
  }
  GridFunction out{PhaseGrid(d)};
  for (std::size_t k = 0; k < h.size(); ++k) {
    for (std::size_t l = 0; l < h.size(); ++l) {
      out.values() += (lambda[k] * lambda[l]) * spectrogram(h[l], h[k]).values();
    }
  }
  return out;
}

GridFunction cohen_class(const HermitianOperator& s, const Signal& f) {
  if (f.dim() != s.dim()) throw DimensionError("cohen_class: dimension mismatch");
  const auto c = trace_shift(parity(s.matrix()), parity(tensor_product(f, f)));
  return GridFunction(c.grid(), c.values().real());
}

ConvLayerIdentity conv_layer_identity(const Signal& f, const Signal& g, const GridFunction& m) {
  require_same_dim(f, g, "conv_layer_identity");
  if (m.dim() != f.dim()) throw DimensionError("conv_layer_identity: kernel grid dimension mismatch");
  GridFunction lhs = grid_convolve(spectrogram(f, g), m);
  const HermitianOperator layer = fn_op_convolve(m, rank_one(f));
  GridFunction rhs = op_op_convolve(layer, parity(rank_one(g)));
  const double diff = (lhs.values() - rhs.values()).cwiseAbs().maxCoeff();
  return {std::move(lhs), std::move(rhs), diff};
}

}  // namespace qha
