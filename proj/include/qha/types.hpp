#pragma once

// Core value types shared by every module: signals, the discrete phase space,
// functions on it, and Hermitian operators on C^d.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace qha {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

/// Raised when two objects that must share the ambient dimension d do not.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an eigensolver or other numerical kernel fails.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index of a phase-space cell: time lag m and frequency n, both taken mod d.
struct GridIndex {
  int m = 0;
  int n = 0;
  friend bool operator==(const GridIndex&, const GridIndex&) = default;
};

/// The finite phase space Z_d x Z_d.
///
/// Cell (m, n) sits at z = (m, n) / sqrt(d) and carries measure 1/d, so the
/// whole torus has measure d and side length sqrt(d) in phase units.
class PhaseGrid {
 public:
  explicit PhaseGrid(int d);

  int dim() const noexcept { return d_; }
  double cell_measure() const noexcept { return 1.0 / d_; }
  double cell_side() const noexcept { return cell_side_; }
  double side_length() const noexcept { return d_ * cell_side_; }
  double total_measure() const noexcept { return static_cast<double>(d_); }

  int wrap(long long i) const noexcept {
    long long r = i % d_;
    return static_cast<int>(r < 0 ? r + d_ : r);
  }
  /// Representative of i in (-d/2, d/2].
  int centered(long long i) const noexcept {
    int w = wrap(i);
    return 2 * w > d_ ? w - d_ : w;
  }
  /// Phase-space coordinate of index i along either axis.
  double coordinate(long long i) const noexcept { return centered(i) * cell_side_; }
  /// Nearest cell index for a phase-space coordinate.
  int index_of(double coordinate) const noexcept;

  friend bool operator==(const PhaseGrid& a, const PhaseGrid& b) { return a.d_ == b.d_; }

 private:
  int d_;
  double cell_side_;
};

/// A real or complex d x d array indexed by (m, n) on a PhaseGrid.
template <typename Scalar>
class BasicGridFunction {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit BasicGridFunction(PhaseGrid grid)
      : grid_(grid), values_(Matrix::Zero(grid.dim(), grid.dim())) {}

  BasicGridFunction(PhaseGrid grid, Matrix values) : grid_(grid), values_(std::move(values)) {
    if (values_.rows() != grid_.dim() || values_.cols() != grid_.dim()) {
      throw DimensionError("grid function shape does not match the phase grid");
    }
  }

  const PhaseGrid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return grid_.dim(); }
  const Matrix& values() const noexcept { return values_; }
  Matrix& values() noexcept { return values_; }

  Scalar operator()(int m, int n) const { return values_(grid_.wrap(m), grid_.wrap(n)); }
  Scalar& operator()(int m, int n) { return values_(grid_.wrap(m), grid_.wrap(n)); }
  Scalar at(GridIndex z) const { return (*this)(z.m, z.n); }

 private:
  PhaseGrid grid_;
  Matrix values_;
};

using GridFunction = BasicGridFunction<double>;
using ComplexGridFunction = BasicGridFunction<Complex>;

/// A data point or window: a vector in C^d.
class Signal {
 public:
  Signal() = default;
  explicit Signal(CVector values) : values_(std::move(values)) {}

  static Signal zeros(int d) { return Signal(CVector::Zero(d)); }

  int dim() const noexcept { return static_cast<int>(values_.size()); }
  const CVector& values() const noexcept { return values_; }
  Complex operator[](int i) const { return values_(i); }

  double squared_norm() const { return values_.squaredNorm(); }
  double norm() const { return values_.norm(); }

  Signal scaled(Complex factor) const { return Signal(values_ * factor); }
  Signal normalized() const;

 private:
  CVector values_;
};

/// <a, b>, linear in the first argument.
inline Complex inner(const Signal& a, const Signal& b) { return b.values().dot(a.values()); }

void require_same_dim(const Signal& a, const Signal& b, const char* what);

/// A d x d Hermitian matrix. The stored matrix is symmetrized on construction;
/// the pre-symmetrization defect max|A - A*| is kept as a diagnostic.
class HermitianOperator {
 public:
  static constexpr double kDefaultTolerance = 1e-10;

  explicit HermitianOperator(CMatrix matrix, double tolerance = kDefaultTolerance);

  static HermitianOperator identity(int d);
  static HermitianOperator zero(int d);

  int dim() const noexcept { return static_cast<int>(matrix_.rows()); }
  const CMatrix& matrix() const noexcept { return matrix_; }
  double hermiticity_defect() const noexcept { return defect_; }
  double trace() const { return matrix_.trace().real(); }

  HermitianOperator scaled(double factor) const;

 private:
  CMatrix matrix_;
  double defect_ = 0.0;
};

/// A collection of data points of common dimension, plus provenance.
class DataSet {
 public:
  DataSet() = default;
  DataSet(std::vector<Signal> signals, std::uint64_t seed, std::string label);

  const std::vector<Signal>& signals() const noexcept { return signals_; }
  std::size_t size() const noexcept { return signals_.size(); }
  bool empty() const noexcept { return signals_.empty(); }
  int dim() const { return signals_.empty() ? 0 : signals_.front().dim(); }
  std::uint64_t seed() const noexcept { return seed_; }
  const std::string& label() const noexcept { return label_; }

  /// Sum of squared norms; equals tr(S) for the data operator S.
  double total_energy() const;
  bool is_normalized(double tolerance = 1e-12) const;

 private:
  std::vector<Signal> signals_;
  std::uint64_t seed_ = 0;
  std::string label_;
};

}  // namespace qha
