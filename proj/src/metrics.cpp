#include "qha/metrics.hpp"

#include "dft.hpp"
#include "qha/operators.hpp"
#include "qha/tf.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qha {
namespace {

constexpr double kTraceTolerance = 1e-8;
constexpr double kClampTolerance = 1e-10;
constexpr double kMassTolerance = 1e-6;
constexpr double kNegativeDensity = 1e-12;
constexpr double kRangeTolerance = 1e-9;

double phi(double x) { return x - x * x; }

RVector clamped_eigenvalues(const HermitianOperator& a, const char* what) {
  RVector ev = hermitian_eigenvalues(a.matrix());
  const double scale = ev.size() ? ev.cwiseAbs().maxCoeff() : 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) < 0.0) {
      if (ev(k) < -kClampTolerance * scale) {
        throw NumericalError(std::string(what) + ": negative eigenvalue " + std::to_string(ev(k)));
      }
      ev(k) = 0.0;
    }
  }
  return ev;
}

// C(v) = #{z in Omega : z + v in Omega}, exact integers.
RMatrix mask_autocorrelation(const Domain& omega) {
  const int d = omega.dim();
  CMatrix chi = omega.mask().cast<double>().matrix().cast<Complex>();
  detail::dft2(chi, detail::Direction::forward);
  CMatrix power = chi.cwiseAbs2().cast<Complex>();
  detail::dft2(power, detail::Direction::backward);
  const double scale = 1.0 / (static_cast<double>(d) * d);
  return (power.real() * scale).array().round().matrix();
}

}  // namespace

double entropy_of_eigenvalues(const RVector& eigenvalues) {
  double h = 0.0;
  for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
    const double l = eigenvalues(k);
    if (l > 0.0) h -= l * std::log(l);
  }
  return h;
}

double von_neumann_entropy(const HermitianOperator& a) {
  if (std::abs(a.trace() - 1.0) > kTraceTolerance) {
    throw std::invalid_argument("von_neumann_entropy: trace must be 1, got " + std::to_string(a.trace()));
  }
  return entropy_of_eigenvalues(clamped_eigenvalues(a, "von_neumann_entropy"));
}

EffectiveDimension effective_dimension(const HermitianOperator& a) {
  const double h = von_neumann_entropy(a);
  return {h, std::exp(h)};
}

double differential_entropy(const GridFunction& f) {
  const double mass = grid_integrate(f);
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw std::invalid_argument("differential_entropy: density has mass " + std::to_string(mass));
  }
  if (f.values().minCoeff() < -kNegativeDensity) {
    throw std::invalid_argument("differential_entropy: density has negative values");
  }
  double sum = 0.0;
  for (Eigen::Index j = 0; j < f.values().cols(); ++j) {
    for (Eigen::Index i = 0; i < f.values().rows(); ++i) {
      const double v = f.values()(i, j);
      if (v > 0.0) sum -= v * std::log(v);
    }
  }
  return f.grid().cell_measure() * sum;
}

double projection_functional_spectral(const HermitianOperator& a) {
  const RVector ev = clamped_eigenvalues(a, "projection_functional_spectral");
  if (ev.size() && ev.maxCoeff() > 1.0 + kRangeTolerance) {
    throw std::invalid_argument("projection_functional_spectral: eigenvalue above 1: " + std::to_string(ev.maxCoeff()));
  }
  double p = 0.0;
  for (Eigen::Index k = 0; k < ev.size(); ++k) p += phi(ev(k));
  return p;
}

double alc(const GridFunction& stilde, const Domain& omega) {
  if (stilde.dim() != omega.dim()) throw DimensionError("alc: dimension mismatch");
  if (omega.cell_count() == 0) throw std::invalid_argument("alc: empty domain");
  const double d = omega.dim();
  const RMatrix c = mask_autocorrelation(omega);
  const double overlap = stilde.values().cwiseProduct(c).sum() / (d * d);
  return 1.0 - overlap / omega.measure();
}

BoundsReport berezin_lieb_check(const HermitianOperator& s, const Domain& omega) {
  const GridFunction st = total_correlation(s);
  const double measure = omega.measure();
  BoundsReport r;
  r.lower = std::log(measure) + alc(st, omega);
  const HermitianOperator local = mixed_state_localization(omega, s).scaled(1.0 / measure);
  r.mid = von_neumann_entropy(local);
  GridFunction weight = omega.indicator();
  weight.values() /= measure;
  GridFunction smoothed = grid_convolve(weight, st);
  smoothed.values() = smoothed.values().cwiseMax(0.0);
  r.upper = differential_entropy(smoothed);
  r.tolerance = 1e-7 * std::max(1.0, std::abs(r.mid));
  r.slack_lower = r.mid - r.lower;
  r.slack_upper = r.upper - r.mid;
  r.sandwich_pass = r.slack_lower >= -r.tolerance && r.slack_upper >= -r.tolerance;
  GridFunction st_pos = st;
  st_pos.values() = st.values().cwiseMax(0.0);
  r.entropy_stilde = differential_entropy(st_pos);
  r.entropy_s = von_neumann_entropy(s);
  r.berlieb2_pass = r.entropy_stilde >= r.entropy_s - 1e-7 * std::max(1.0, std::abs(r.entropy_s));
  r.pass = r.sandwich_pass && r.berlieb2_pass;
  return r;
}

LemmaReport lemma_alc_lower_bound(const HermitianOperator& s, const Domain& omega) {
  const GridFunction st = total_correlation(s);
  const RVector ev = clamped_eigenvalues(mixed_state_localization(omega, s), "lemma_alc_lower_bound");
  const int a = std::min(omega.ceil_measure(), static_cast<int>(ev.size()));
  const double lhs = alc(st, omega);
  const double rhs = 1.0 - ev.head(a).sum() / omega.measure();
  return {lhs, rhs, lhs >= rhs - 1e-8};
}

FiniteRankReport finite_rank_check(const HermitianOperator& s, const Domain& omega) {
  const auto approx = finite_rank_approx(omega, s);
  const double measure = omega.measure();
  const double lhs = approx.trace_norm_error / measure;
  const double rhs = (approx.a_omega - measure) / measure + 2.0 * alc(total_correlation(s), omega);
  return {lhs, rhs, lhs <= rhs + 1e-8};
}

std::string to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::vacuous: return "vacuous";
    case CheckStatus::fail: return "fail";
    case CheckStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

double cyclic_norm(const PhaseGrid& grid, int m, int n) {
  return std::hypot(grid.coordinate(m), grid.coordinate(n));
}

PerimeterReport perimeter_bound_check(const GridFunction& stilde, const Domain& omega) {
  const auto& grid = stilde.grid();
  const int d = grid.dim();
  double first_moment = 0.0;
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) first_moment += stilde.values()(m, n) * cyclic_norm(grid, m, n);
  }
  first_moment *= grid.cell_measure();
  const double value = alc(stilde, omega);
  const double bound = omega.perimeter() / omega.measure() * first_moment;
  CheckStatus status = CheckStatus::pass;
  if (value > bound + 1e-8) status = CheckStatus::fail;
  else if (bound >= 1.0) status = CheckStatus::vacuous;
  return {value, bound, status};
}

PerimeterReport perimeter_bound_check(const HermitianOperator& s, const Domain& omega) {
  return perimeter_bound_check(total_correlation(s), omega);
}

CovarianceReport entropy_covariance_check(const GridFunction& stilde, const CovarianceOptions& options) {
  const auto& grid = stilde.grid();
  const int d = grid.dim();
  Eigen::Index mi = 0;
  Eigen::Index ni = 0;
  stilde.values().maxCoeff(&mi, &ni);
  const GridIndex center{static_cast<int>(mi), static_cast<int>(ni)};

  GridFunction density = stilde;
  density.values() = stilde.values().cwiseMax(0.0);
  const double h = differential_entropy(density);

  const double edge = options.edge_fraction * grid.side_length();
  double mass = 0.0;
  double mt = 0.0;
  double mf = 0.0;
  double second = 0.0;
  double edge_mass = 0.0;
  for (int n = 0; n < d; ++n) {
    for (int m = 0; m < d; ++m) {
      const double w = density.values()(m, n) * grid.cell_measure();
      const double t = grid.coordinate(m - center.m);
      const double f = grid.coordinate(n - center.n);
      mass += w;
      mt += w * t;
      mf += w * f;
      second += w * (t * t + f * f);
      if (std::abs(t) >= edge || std::abs(f) >= edge) edge_mass += w;
    }
  }
  mt /= mass;
  mf /= mass;
  const double trace_cov = second / mass - (mt * mt + mf * mf);
  CovarianceReport r;
  r.lhs = std::exp(0.5 * h);
  r.rhs = std::sqrt(std::numbers::pi * std::numbers::e * std::max(trace_cov, 0.0));
  r.trace_covariance = trace_cov;
  r.edge_mass = edge_mass;
  r.center = center;
  if (trace_cov < options.min_variance * grid.cell_measure() || edge_mass > options.max_edge_mass) {
    r.status = CheckStatus::inconclusive;
  } else {
    r.status = r.lhs <= r.rhs * (1.0 + options.tolerance) ? CheckStatus::pass : CheckStatus::fail;
  }
  return r;
}

std::vector<ScanPoint> asymptotic_alc_scan(const GridFunction& stilde, const DomainDescriptor& omega,
                                           const std::vector<double>& scales) {
  if (omega.d != stilde.dim()) throw DimensionError("asymptotic_alc_scan: dimension mismatch");
  std::vector<ScanPoint> out;
  out.reserve(scales.size());
  for (double r : scales) {
    const Domain scaled = scaled_domain(omega, r);
    out.push_back({r, scaled.measure(), alc(stilde, scaled)});
  }
  return out;
}

GeneralBerezinLiebReport general_berezin_lieb_check(const HermitianOperator& a, const HermitianOperator& t,
                                                    const GridFunction& f) {
  if (a.dim() != t.dim() || f.dim() != t.dim()) throw DimensionError("general_berezin_lieb_check: dimension mismatch");
  if (std::abs(t.trace() - 1.0) > kTraceTolerance) {
    throw std::invalid_argument("general_berezin_lieb_check: T must have unit trace");
  }
  if (f.values().minCoeff() < -kRangeTolerance || f.values().maxCoeff() > 1.0 + kRangeTolerance) {
    throw std::invalid_argument("general_berezin_lieb_check: f must take values in [0, 1]");
  }
  const double cell = f.grid().cell_measure();
  GeneralBerezinLiebReport r;
  const GridFunction at = op_op_convolve(a, t);
  r.op_lhs = cell * at.values().unaryExpr(&phi).sum();
  r.op_rhs = hermitian_eigenvalues(a.matrix()).unaryExpr(&phi).sum();
  r.fn_lhs = hermitian_eigenvalues(fn_op_convolve(f, t).matrix()).unaryExpr(&phi).sum();
  r.fn_rhs = cell * f.values().unaryExpr(&phi).sum();
  const double tol = 1e-9 * std::max({1.0, std::abs(r.op_rhs), std::abs(r.fn_rhs)});
  r.pass = r.op_lhs >= r.op_rhs - tol && r.fn_lhs >= r.fn_rhs - tol;
  return r;
}

}  // namespace qha
