#include "qha/augmentation.hpp"

#include "qha/operators.hpp"
#include "qha/tf.hpp"

#include <cmath>
#include <string>

namespace qha {
namespace {

constexpr double kEdgeEpsilon = 1e-9;

// Signed offset of x from c reduced to the centered period (-L/2, L/2].
double cyclic_offset(double x, double c, double period) {
  double t = x - c;
  t -= period * std::round(t / period);
  return t;
}

void check_side(double side, double limit, const char* name) {
  if (!(side > 0.0)) throw std::invalid_argument(std::string("rectangle ") + name + " must be positive");
  if (side > limit * (1.0 + kEdgeEpsilon)) {
    throw std::invalid_argument(std::string("rectangle ") + name + " " + std::to_string(side) +
                                " exceeds the torus side " + std::to_string(limit));
  }
}

}  // namespace

Domain::Domain(PhaseGrid grid, Mask mask, DomainDescriptor descriptor)
    : grid_(grid), mask_(std::move(mask)), descriptor_(std::move(descriptor)) {
  const int d = grid_.dim();
  if (mask_.rows() != d || mask_.cols() != d) throw DimensionError("domain mask does not match the phase grid");
  descriptor_.d = d;
  long long edges = 0;
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      if (mask_(m, n)) ++cells_;
      if (mask_(m, n) != mask_((m + 1) % d, n)) ++edges;
      if (mask_(m, n) != mask_(m, (n + 1) % d)) ++edges;
    }
  }
  perimeter_ = static_cast<double>(edges) * grid_.cell_side();
}

int Domain::ceil_measure() const noexcept {
  const long long d = grid_.dim();
  return static_cast<int>((cells_ + d - 1) / d);
}

GridFunction Domain::indicator() const { return GridFunction(grid_, mask_.cast<double>().matrix()); }

Domain make_rect_domain(const PhaseGrid& grid, double width, double height, double center_t, double center_f) {
  const double side = grid.side_length();
  check_side(width, side, "width");
  check_side(height, side, "height");
  const int d = grid.dim();
  const double half_w = 0.5 * width + kEdgeEpsilon;
  const double half_h = 0.5 * height + kEdgeEpsilon;
  Mask mask = Mask::Constant(d, d, false);
  for (int m = 0; m < d; ++m) {
    if (std::abs(cyclic_offset(m * grid.cell_side(), center_t, side)) > half_w) continue;
    for (int n = 0; n < d; ++n) {
      mask(m, n) = std::abs(cyclic_offset(n * grid.cell_side(), center_f, side)) <= half_h;
    }
  }
  return Domain(grid, std::move(mask), {"rect", width, height, center_t, center_f, d, "phase"});
}

Domain make_rect_domain_cells(const PhaseGrid& grid, int width, int height, GridIndex center) {
  const int d = grid.dim();
  if (width < 1 || height < 1 || width > d || height > d) {
    throw std::invalid_argument("cell rectangle sides must lie in [1, d]");
  }
  Mask mask = Mask::Constant(d, d, false);
  for (int i = -(width / 2); i < width - width / 2; ++i) {
    for (int j = -(height / 2); j < height - height / 2; ++j) mask(grid.wrap(center.m + i), grid.wrap(center.n + j)) = true;
  }
  DomainDescriptor desc{"rect", static_cast<double>(width), static_cast<double>(height),
                        static_cast<double>(center.m), static_cast<double>(center.n), d, "cells"};
  return Domain(grid, std::move(mask), desc);
}

Domain scaled_domain(const DomainDescriptor& descriptor, double scale) {
  if (descriptor.shape != "rect") throw std::invalid_argument("only rectangles can be rescaled");
  const PhaseGrid grid(descriptor.d);
  if (descriptor.units == "cells") {
    return make_rect_domain_cells(grid, static_cast<int>(std::lround(descriptor.width * scale)),
                                  static_cast<int>(std::lround(descriptor.height * scale)),
                                  {static_cast<int>(descriptor.center_t), static_cast<int>(descriptor.center_f)});
  }
  return make_rect_domain(grid, descriptor.width * scale, descriptor.height * scale, descriptor.center_t,
                          descriptor.center_f);
}

Domain domain_from_mask(const PhaseGrid& grid, Mask mask) {
  return Domain(grid, std::move(mask), {"mask", 0.0, 0.0, 0.0, 0.0, grid.dim(), "cells"});
}

Domain full_domain(const PhaseGrid& grid) {
  const int d = grid.dim();
  return Domain(grid, Mask::Constant(d, d, true),
                {"rect", grid.side_length(), grid.side_length(), 0.0, 0.0, d, "phase"});
}

HermitianOperator mixed_state_localization(const Domain& omega, const HermitianOperator& s) {
  if (omega.dim() != s.dim()) throw DimensionError("mixed_state_localization: dimension mismatch");
  if (omega.cell_count() == 0) throw std::invalid_argument("mixed_state_localization: empty domain");
  if (std::abs(s.trace() - 1.0) > 1e-8) {
    throw std::invalid_argument("mixed_state_localization: trace must be 1, got " + std::to_string(s.trace()));
  }
  require_positive(s, "mixed_state_localization");
  return fn_op_convolve(omega.indicator(), s);
}

FiniteRankApproximation finite_rank_approx(const Domain& omega, const HermitianOperator& s) {
  const HermitianOperator local = mixed_state_localization(omega, s);
  const auto sd = spectral_decompose(local);
  const int d = s.dim();
  const int a = std::min(omega.ceil_measure(), d);
  const CMatrix top = sd.eigenvectors.leftCols(a);
  HermitianOperator t(top * top.adjoint());
  double closed = 0.0;
  for (int k = 0; k < d; ++k) closed += k < a ? 1.0 - sd.eigenvalues(k) : sd.eigenvalues(k);
  const double error = trace_norm(local.matrix() - t.matrix());
  return {std::move(t), a, error, closed, sd.eigenvalues};
}

DataSet augment_dataset(const Domain& omega, const DataSet& data, std::size_t max_signals) {
  if (omega.dim() != data.dim()) throw DimensionError("augment_dataset: dimension mismatch");
  if (omega.cell_count() == 0) throw std::invalid_argument("augment_dataset: empty domain");
  const auto total = static_cast<std::size_t>(omega.cell_count()) * data.size();
  if (total > max_signals) {
    throw std::length_error("augment_dataset: " + std::to_string(total) + " signals exceed the cap of " +
                            std::to_string(max_signals));
  }
  const int d = omega.dim();
  const double scale = 1.0 / std::sqrt(omega.measure() * d);
  std::vector<Signal> out;
  out.reserve(total);
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) {
      if (!omega.mask()(m, n)) continue;
      for (const auto& f : data.signals()) out.push_back(tf_shift(f, {m, n}).scaled(scale));
    }
  }
  return DataSet(std::move(out), data.seed(), data.label() + "+augmented");
}

}  // namespace qha
