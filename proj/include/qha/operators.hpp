#pragma once

// Operator algebra on C^d: tensor products, data operators, spectral
// decompositions, and the convolutions between functions on Z_d x Z_d and
// operators.

#include "qha/types.hpp"

#include <vector>

namespace qha {

/// f (x) g, the rank-one map h -> <h, g> f, as the matrix f g*.
CMatrix tensor_product(const Signal& f, const Signal& g);

/// f (x) f.
HermitianOperator rank_one(const Signal& f);

/// S = sum_i f_i (x) f_i. The data set must be normalized.
HermitianOperator data_operator(const DataSet& data);

/// Descending eigenvalues with orthonormal eigenvectors as columns.
struct SpectralDecomposition {
  RVector eigenvalues;
  CMatrix eigenvectors;
  double clamp_tolerance = 0.0;

  int dim() const { return static_cast<int>(eigenvalues.size()); }
  CMatrix reconstruct() const;
};

/// Eigenvalues in [-tol * max|lambda|, 0) are set to 0; anything below that
/// raises NumericalError. Eigenvectors are phase-fixed so their largest
/// component is real positive; equal eigenvalues are ordered by the index of
/// that component.
SpectralDecomposition spectral_decompose(const HermitianOperator& a, double clamp_tolerance = 1e-10);

/// Unclamped eigenvalues of a Hermitian matrix, descending.
RVector hermitian_eigenvalues(const CMatrix& a);

/// Throws std::invalid_argument unless every eigenvalue is >= -tol * max|lambda|.
void require_positive(const HermitianOperator& a, const char* what, double tolerance = 1e-10);

/// Sum of singular values of a Hermitian matrix.
double trace_norm(const CMatrix& a);

/// alpha_z(S) = pi(z) S pi(z)*.
HermitianOperator operator_shift(const HermitianOperator& s, GridIndex z);

/// P S P with P f(x) = f(-x).
HermitianOperator parity(const HermitianOperator& s);
CMatrix parity(const CMatrix& s);

/// z -> tr(A alpha_z(B)) for all cells, in O(d^2 log d).
ComplexGridFunction trace_shift(const CMatrix& a, const CMatrix& b);

/// F * S = cell_measure * sum_z F(z) alpha_z(S).
HermitianOperator fn_op_convolve(const GridFunction& f, const HermitianOperator& s);

/// S * T (z) = tr(S alpha_z(T-check)), real part.
GridFunction op_op_convolve(const HermitianOperator& s, const HermitianOperator& t);

/// S~ = S * S-check = tr(S alpha_z(S)). S must be positive with unit trace.
GridFunction total_correlation(const HermitianOperator& s);

/// S~ = sum_{k,l} lambda_k lambda_l |V_{h_k} h_l|^2 over eigenvalues above
/// rank_cut * lambda_1.
GridFunction total_correlation_spectral(const HermitianOperator& s, double rank_cut = 1e-10);

/// Q_S(f) = S-check * (f (x) f).
GridFunction cohen_class(const HermitianOperator& s, const Signal& f);

struct ConvLayerIdentity {
  GridFunction lhs;
  GridFunction rhs;
  double max_abs_diff;
};

/// lhs = |V_g f|^2 * m by grid convolution; rhs = [m * (f (x) f)] * (g-check (x) g-check)
/// by the operator route.
ConvLayerIdentity conv_layer_identity(const Signal& f, const Signal& g, const GridFunction& m);

}  // namespace qha
