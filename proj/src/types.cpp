#include "qha/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace qha {

PhaseGrid::PhaseGrid(int d) : d_(d), cell_side_(0.0) {
  if (d <= 0) {
    throw std::invalid_argument("phase grid dimension must be positive, got " + std::to_string(d));
  }
  cell_side_ = 1.0 / std::sqrt(static_cast<double>(d));
}

int PhaseGrid::index_of(double coordinate) const noexcept {
  return wrap(std::llround(coordinate / cell_side_));
}

Signal Signal::normalized() const {
  const double n = norm();
  if (n == 0.0) throw std::invalid_argument("cannot normalize a zero signal");
  return Signal(values_ / n);
}

void require_same_dim(const Signal& a, const Signal& b, const char* what) {
  if (a.dim() != b.dim()) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(a.dim()) +
                         " vs " + std::to_string(b.dim()) + ")");
  }
}

HermitianOperator::HermitianOperator(CMatrix matrix, double tolerance) {
  if (matrix.rows() != matrix.cols()) throw DimensionError("Hermitian operator must be square");
  const CMatrix adj = matrix.adjoint();
  defect_ = matrix.size() ? (matrix - adj).cwiseAbs().maxCoeff() : 0.0;
  const double scale = matrix.size() ? matrix.cwiseAbs().maxCoeff() : 0.0;
  if (defect_ > tolerance * std::max(scale, 1e-300)) {
    throw std::invalid_argument("matrix is not Hermitian: defect " + std::to_string(defect_));
  }
  matrix_ = 0.5 * (matrix + adj);
}

HermitianOperator HermitianOperator::identity(int d) {
  return HermitianOperator(CMatrix::Identity(d, d));
}

HermitianOperator HermitianOperator::zero(int d) { return HermitianOperator(CMatrix::Zero(d, d)); }

HermitianOperator HermitianOperator::scaled(double factor) const {
  return HermitianOperator(matrix_ * factor);
}

DataSet::DataSet(std::vector<Signal> signals, std::uint64_t seed, std::string label)
    : signals_(std::move(signals)), seed_(seed), label_(std::move(label)) {
  if (signals_.empty()) throw std::invalid_argument("data set must be nonempty");
  const int d = signals_.front().dim();
  for (const auto& s : signals_) {
    if (s.dim() != d) throw DimensionError("data set signals must share one dimension");
  }
}

double DataSet::total_energy() const {
  double e = 0.0;
  for (const auto& s : signals_) e += s.squared_norm();
  return e;
}

bool DataSet::is_normalized(double tolerance) const {
  return std::abs(total_energy() - 1.0) <= tolerance;
}

}  // namespace qha
