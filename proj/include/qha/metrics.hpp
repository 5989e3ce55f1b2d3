#pragma once

// Entropies, concentration functionals, and executable checks of the
// inequalities that relate them.

#include "qha/augmentation.hpp"
#include "qha/types.hpp"

#include <string>
#include <vector>

namespace qha {

/// -sum lambda ln lambda for eigenvalues already known to be in [0, 1].
double entropy_of_eigenvalues(const RVector& eigenvalues);

/// H_vN(A) = -sum lambda_k ln lambda_k. A must be positive with |tr A - 1| <= 1e-8.
double von_neumann_entropy(const HermitianOperator& a);

struct EffectiveDimension {
  double entropy;
  double exp_entropy;
};
EffectiveDimension effective_dimension(const HermitianOperator& a);

/// -cell_measure * sum F ln F. F must be a probability density on the grid.
double differential_entropy(const GridFunction& f);

/// P(A) = tr A - tr A^2 = sum lambda (1 - lambda); eigenvalues must lie in [0, 1].
double projection_functional_spectral(const HermitianOperator& a);

/// ALC = 1 - (1/|Omega|) int_Omega int_{Omega - z} S~, via the mask autocorrelation.
double alc(const GridFunction& stilde, const Domain& omega);

struct BoundsReport {
  double lower = 0.0;  // ln|Omega| + ALC
  double mid = 0.0;    // H_vN((chi/|Omega|) * S)
  double upper = 0.0;  // H((chi/|Omega|) conv S~)
  double slack_lower = 0.0;
  double slack_upper = 0.0;
  double tolerance = 0.0;
  double entropy_stilde = 0.0;  // H(S~)
  double entropy_s = 0.0;       // H_vN(S)
  bool sandwich_pass = false;
  bool berlieb2_pass = false;
  bool pass = false;
};

BoundsReport berezin_lieb_check(const HermitianOperator& s, const Domain& omega);

struct LemmaReport {
  double lhs;  // ALC
  double rhs;  // 1 - sum_{k <= A} lambda_k / |Omega|
  bool pass;
};
LemmaReport lemma_alc_lower_bound(const HermitianOperator& s, const Domain& omega);

struct FiniteRankReport {
  double lhs;  // trace-norm error / |Omega|
  double rhs;  // (A - |Omega|) / |Omega| + 2 ALC
  bool pass;
};
FiniteRankReport finite_rank_check(const HermitianOperator& s, const Domain& omega);

enum class CheckStatus { pass, vacuous, fail, inconclusive };
std::string to_string(CheckStatus status);

struct PerimeterReport {
  double alc;
  double bound;  // (|dOmega| / |Omega|) int S~(z) |z| dz
  CheckStatus status;
};
PerimeterReport perimeter_bound_check(const HermitianOperator& s, const Domain& omega);
PerimeterReport perimeter_bound_check(const GridFunction& stilde, const Domain& omega);

/// Minimal cyclic Euclidean distance of cell (m, n) from the origin, phase units.
double cyclic_norm(const PhaseGrid& grid, int m, int n);

struct CovarianceOptions {
  double tolerance = 1e-3;      // relative slack on the right-hand side
  double min_variance = 1.0;    // tr Sigma below this many cell areas is unresolved
  double edge_fraction = 0.45;  // cells beyond this fraction of the side count as edge
  double max_edge_mass = 0.05;  // edge mass above this makes moments ill-defined
};

struct CovarianceReport {
  double lhs;            // e^{H(S~)/2}
  double rhs;            // sqrt(pi e tr Sigma)
  double trace_covariance;
  double edge_mass;
  GridIndex center;      // argmax used to recenter
  CheckStatus status;    // pass, fail or inconclusive
};
CovarianceReport entropy_covariance_check(const GridFunction& stilde, const CovarianceOptions& options = {});

struct ScanPoint {
  double scale;
  double measure;
  double alc;
};
/// ALC(S~, R Omega) for each R; Omega must be a rectangle.
std::vector<ScanPoint> asymptotic_alc_scan(const GridFunction& stilde, const DomainDescriptor& omega,
                                           const std::vector<double>& scales);

/// Both Berezin-Lieb inequalities with Phi(x) = x - x^2:
/// int Phi(A * T) >= tr Phi(A) and tr Phi(f * T) >= int Phi(f).
struct GeneralBerezinLiebReport {
  double op_lhs;
  double op_rhs;
  double fn_lhs;
  double fn_rhs;
  bool pass;
};
GeneralBerezinLiebReport general_berezin_lieb_check(const HermitianOperator& a, const HermitianOperator& t,
                                                    const GridFunction& f);

}  // namespace qha
