#pragma once

// Phase-space domains, mixed-state localization operators chi_Omega * S and
// their finite-rank approximants.

#include "qha/types.hpp"

#include <cstddef>
#include <string>

namespace qha {

using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Shape parameters that produced a domain. `units` is "phase" for phase
/// coordinates or "cells" for cell counts.
struct DomainDescriptor {
  std::string shape = "rect";
  double width = 0.0;
  double height = 0.0;
  double center_t = 0.0;
  double center_f = 0.0;
  int d = 0;
  std::string units = "phase";
};

class Domain {
 public:
  Domain(PhaseGrid grid, Mask mask, DomainDescriptor descriptor);

  const PhaseGrid& grid() const noexcept { return grid_; }
  int dim() const noexcept { return grid_.dim(); }
  const Mask& mask() const noexcept { return mask_; }
  const DomainDescriptor& descriptor() const noexcept { return descriptor_; }
  bool contains(int m, int n) const { return mask_(grid_.wrap(m), grid_.wrap(n)); }

  long long cell_count() const noexcept { return cells_; }
  /// |Omega| = cells / d.
  double measure() const noexcept { return static_cast<double>(cells_) / grid_.dim(); }
  /// Cyclic 4-neighbour boundary edges times the cell side.
  double perimeter() const noexcept { return perimeter_; }
  /// ceil(|Omega|), computed in integer arithmetic.
  int ceil_measure() const noexcept;

  /// chi_Omega as a 0/1 grid function.
  GridFunction indicator() const;

 private:
  PhaseGrid grid_;
  Mask mask_;
  DomainDescriptor descriptor_;
  long long cells_ = 0;
  double perimeter_ = 0.0;
};

/// Cells whose centers lie in the cyclically embedded closed rectangle
/// [c_t - w/2, c_t + w/2] x [c_f - h/2, c_f + h/2] (phase units).
Domain make_rect_domain(const PhaseGrid& grid, double width, double height, double center_t = 0.0,
                        double center_f = 0.0);

/// Rectangle of exactly width x height cells, offsets -floor(w/2) .. w - 1 - floor(w/2)
/// around the center cell.
Domain make_rect_domain_cells(const PhaseGrid& grid, int width, int height, GridIndex center = {});

/// Rebuild a rectangle from its descriptor, with sides multiplied by `scale`.
Domain scaled_domain(const DomainDescriptor& descriptor, double scale);

Domain domain_from_mask(const PhaseGrid& grid, Mask mask);

Domain full_domain(const PhaseGrid& grid);

/// chi_Omega * S = cell_measure * sum_{z in Omega} alpha_z(S). S must be
/// positive with unit trace.
HermitianOperator mixed_state_localization(const Domain& omega, const HermitianOperator& s);

struct FiniteRankApproximation {
  HermitianOperator t_omega;
  int a_omega;
  double trace_norm_error;
  /// sum_{k <= A} (1 - lambda_k) + sum_{k > A} lambda_k.
  double closed_form_error;
  RVector eigenvalues;
};

/// T_Omega = projection onto the top ceil(|Omega|) eigenvectors of chi_Omega * S.
FiniteRankApproximation finite_rank_approx(const Domain& omega, const HermitianOperator& s);

/// {(|Omega| d)^{-1/2} pi(mu) f_i : mu in Omega}, ordered by cell (row-major)
/// then by signal. Throws when N * cells exceeds max_signals.
DataSet augment_dataset(const Domain& omega, const DataSet& data, std::size_t max_signals = 2'000'000);

}  // namespace qha
