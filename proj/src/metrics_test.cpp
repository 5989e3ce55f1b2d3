#include "qha/metrics.hpp"

#include "oracles.hpp"
#include "qha/datasets.hpp"
#include "qha/operators.hpp"
#include "qha/tf.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace qha {
namespace {

std::vector<std::pair<int, int>> cells_of(const Domain& omega) {
  std::vector<std::pair<int, int>> cells;
  for (int m = 0; m < omega.dim(); ++m) {
    for (int n = 0; n < omega.dim(); ++n) {
      if (omega.mask()(m, n)) cells.emplace_back(m, n);
    }
  }
  return cells;
}

Domain random_rect(const PhaseGrid& grid, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> side(0.3, 0.8 * grid.side_length());
  std::uniform_real_distribution<double> center(-grid.side_length() / 2, grid.side_length() / 2);
  return make_rect_domain(grid, side(rng), side(rng), center(rng), center(rng));
}

TEST(VonNeumann, RankOneIsZero) {
  std::mt19937_64 rng(1);
  EXPECT_NEAR(von_neumann_entropy(rank_one(Signal(oracle::random_unit(16, rng)))), 0.0, 1e-10);
}

TEST(VonNeumann, MaximallyMixed) {
  EXPECT_NEAR(von_neumann_entropy(HermitianOperator::identity(20).scaled(0.05)), std::log(20.0), 1e-12);
}

TEST(VonNeumann, TwoLevelValue) {
  const auto h = hermite_basis(16, 2);
  const double expected = -0.7 * std::log(0.7) - 0.3 * std::log(0.3);
  EXPECT_NEAR(von_neumann_entropy(gen_hermite_pair_state(0.3, h[0], h[1])), expected, 1e-12);
  EXPECT_NEAR(expected, 0.6109, 1e-4);
  EXPECT_NEAR(von_neumann_entropy(gen_hermite_pair_state(0.5, h[0], h[1])), std::log(2.0), 1e-12);
}

TEST(VonNeumann, RejectsWrongTrace) {
  EXPECT_THROW(von_neumann_entropy(HermitianOperator::identity(4)), std::invalid_argument);
}

TEST(EffectiveDimension, Values) {
  const auto ed = effective_dimension(HermitianOperator::identity(8).scaled(0.125));
  EXPECT_NEAR(ed.entropy, std::log(8.0), 1e-12);
  EXPECT_NEAR(ed.exp_entropy, 8.0, 1e-10);
  std::mt19937_64 rng(2);
  const auto one = effective_dimension(rank_one(Signal(oracle::random_unit(8, rng))));
  EXPECT_NEAR(one.exp_entropy, 1.0, 1e-9);
  const HermitianOperator s(oracle::random_state(12, 5, rng));
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(s.matrix());
  double h = 0.0;
  for (int k = 0; k < 12; ++k) {
    const double l = std::max(solver.eigenvalues()(k), 0.0);
    if (l > 0) h -= l * std::log(l);
  }
  EXPECT_NEAR(effective_dimension(s).entropy, h, 1e-12);
}

TEST(DifferentialEntropy, UniformAndPoint) {
  const PhaseGrid grid(16);
  EXPECT_NEAR(differential_entropy(constant_grid(grid, 1.0 / 16)), std::log(16.0), 1e-12);
  GridFunction point(grid);
  point(3, 5) = 16.0;
  EXPECT_NEAR(differential_entropy(point), -std::log(16.0), 1e-12);
  EXPECT_THROW(differential_entropy(constant_grid(grid, 1.0)), std::invalid_argument);
}

TEST(DifferentialEntropy, TotalCorrelationMatchesDirectSum) {
  const DataSet data = gen_random_signals(3, 12, 5);
  const auto st = total_correlation(data_operator(data));
  double direct = 0.0;
  for (int m = 0; m < 12; ++m) {
    for (int n = 0; n < 12; ++n) {
      const double v = st(m, n);
      if (v > 0) direct -= v * std::log(v) / 12.0;
    }
  }
  EXPECT_NEAR(differential_entropy(st), direct, 1e-12);
}

TEST(ProjectionFunctional, ProjectionAndHalfIdentity) {
  CMatrix p = CMatrix::Zero(4, 4);
  p(0, 0) = p(2, 2) = 1.0;
  EXPECT_NEAR(projection_functional_spectral(HermitianOperator(p)), 0.0, 1e-14);
  EXPECT_NEAR(projection_functional_spectral(HermitianOperator::identity(4).scaled(0.5)), 1.0, 1e-14);
  EXPECT_THROW(projection_functional_spectral(HermitianOperator::identity(4).scaled(2.0)), std::invalid_argument);
}

TEST(ProjectionFunctional, TraceFormula) {
  std::mt19937_64 rng(6);
  const int d = 16;
  const HermitianOperator s(oracle::random_state(d, 3, rng));
  const auto local = mixed_state_localization(random_rect(PhaseGrid(d), rng), s);
  const double direct = local.trace() - (local.matrix() * local.matrix()).trace().real();
  EXPECT_NEAR(projection_functional_spectral(local), direct, 1e-10);
}

TEST(Alc, FullTorusIsZero) {
  std::mt19937_64 rng(7);
  const HermitianOperator s(oracle::random_state(16, 3, rng));
  EXPECT_NEAR(alc(total_correlation(s), full_domain(PhaseGrid(16))), 0.0, 1e-12);
}

TEST(Alc, MatchesDoubleLoopOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    const int d = 8;
    const PhaseGrid grid(d);
    const HermitianOperator s(oracle::random_state(d, 2, rng));
    const auto st = total_correlation(s);
    Mask mask(d, d);
    std::bernoulli_distribution coin(0.3);
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) mask(m, n) = coin(rng);
    }
    mask(0, 0) = true;
    const Domain omega = domain_from_mask(grid, mask);
    EXPECT_NEAR(alc(st, omega), oracle::alc(st.values(), cells_of(omega)), 1e-12);
  }
}

TEST(Alc, EqualsProjectionFunctionalOverMeasure) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 12 + trial;
    const PhaseGrid grid(d);
    const HermitianOperator s(oracle::random_state(d, 1 + trial % 3, rng));
    const Domain omega = random_rect(grid, rng);
    const double p = projection_functional_spectral(mixed_state_localization(omega, s));
    EXPECT_NEAR(omega.measure() * alc(total_correlation(s), omega), p, 1e-8);
    const double value = alc(total_correlation(s), omega);
    EXPECT_GE(value, -1e-12);
    EXPECT_LE(value, 1.0 + 1e-9);
  }
}

TEST(BerezinLieb, FullTorusAttainsLowerBound) {
  std::mt19937_64 rng(10);
  const int d = 16;
  const HermitianOperator s(oracle::random_state(d, 2, rng));
  const auto r = berezin_lieb_check(s, full_domain(PhaseGrid(d)));
  EXPECT_NEAR(r.lower, std::log(16.0), 1e-10);
  EXPECT_NEAR(r.mid, std::log(16.0), 1e-10);
  EXPECT_TRUE(r.pass);
}

TEST(BerezinLieb, RandomInstancesPass) {
  std::mt19937_64 rng(11);
  const PhaseGrid grid(32);
  for (int trial = 0; trial < 50; ++trial) {
    const HermitianOperator s(oracle::random_state(32, 1 + trial % 6, rng));
    const Domain omega = random_rect(grid, rng);
    const auto r = berezin_lieb_check(s, omega);
    EXPECT_TRUE(r.pass) << r.lower << " " << r.mid << " " << r.upper;
    EXPECT_LE(r.lower, r.mid + r.tolerance);
    EXPECT_LE(r.mid, r.upper + r.tolerance);
  }
}

TEST(BerezinLieb, RankOneStrictlyInside) {
  const int d = 64;
  const auto r = berezin_lieb_check(rank_one(gaussian_window(d)), make_rect_domain(PhaseGrid(d), 1.5, 1.5));
  EXPECT_GT(r.slack_lower, 1e-6);
  EXPECT_GT(r.slack_upper, 1e-6);
  EXPECT_GE(r.entropy_stilde, r.entropy_s);
}

TEST(BerezinLieb, MonotoneDataProcessing) {
  std::mt19937_64 rng(12);
  const PhaseGrid grid(24);
  for (int trial = 0; trial < 10; ++trial) {
    const HermitianOperator s(oracle::random_state(24, 2, rng));
    const Domain omega = random_rect(grid, rng);
    EXPECT_GE(berezin_lieb_check(s, omega).mid, std::log(omega.measure()) - 1e-9);
  }
}

TEST(Lemma, FullTorusEquality) {
  std::mt19937_64 rng(13);
  const HermitianOperator s(oracle::random_state(12, 2, rng));
  const auto r = lemma_alc_lower_bound(s, full_domain(PhaseGrid(12)));
  EXPECT_NEAR(r.lhs, 0.0, 1e-12);
  EXPECT_NEAR(r.rhs, 0.0, 1e-10);
  EXPECT_TRUE(r.pass);
}

TEST(Lemma, RandomAndRankOneInstances) {
  std::mt19937_64 rng(14);
  const PhaseGrid grid(32);
  for (int trial = 0; trial < 20; ++trial) {
    const HermitianOperator s(oracle::random_state(32, 1 + trial % 3, rng));
    EXPECT_TRUE(lemma_alc_lower_bound(s, random_rect(grid, rng)).pass);
  }
  const auto tight = lemma_alc_lower_bound(rank_one(gaussian_window(32)), make_rect_domain(grid, 0.9, 0.9));
  EXPECT_TRUE(tight.pass);
  EXPECT_LT(tight.lhs - tight.rhs, 0.5);
}

TEST(PerimeterBound, FullTorus) {
  std::mt19937_64 rng(15);
  const HermitianOperator s(oracle::random_state(16, 2, rng));
  const auto r = perimeter_bound_check(s, full_domain(PhaseGrid(16)));
  EXPECT_NEAR(r.alc, 0.0, 1e-12);
  EXPECT_NEAR(r.bound, 0.0, 1e-15);
  EXPECT_EQ(r.status, CheckStatus::pass);
}

TEST(PerimeterBound, RandomRectanglesPassOrVacuous) {
  std::mt19937_64 rng(16);
  const PhaseGrid grid(32);
  for (int trial = 0; trial < 30; ++trial) {
    const HermitianOperator s(oracle::random_state(32, 1 + trial % 4, rng));
    const auto r = perimeter_bound_check(s, random_rect(grid, rng));
    EXPECT_NE(r.status, CheckStatus::fail) << r.alc << " " << r.bound;
  }
}

TEST(PerimeterBound, AdaptedShapeHasSmallerAlc) {
  // A time-spread state favours a wide rectangle.
  const int d = 144;
  const PhaseGrid grid(d);
  const DataSet data = gen_gaussian_combos(40, d, 3);
  const auto st = total_correlation(data_operator(data));
  const double wide = alc(st, make_rect_domain(grid, 4.0, 1.49));
  const double tall = alc(st, make_rect_domain(grid, 1.49, 4.0));
  EXPECT_LT(wide, tall);
  EXPECT_NE(perimeter_bound_check(st, make_rect_domain(grid, 4.0, 1.49)).status, CheckStatus::fail);
}

TEST(CyclicNorm, UsesShortestRepresentative) {
  const PhaseGrid grid(16);
  EXPECT_NEAR(cyclic_norm(grid, 15, 0), 0.25, 1e-15);
  EXPECT_NEAR(cyclic_norm(grid, 3, 12), 0.25 * 5.0, 1e-15);
}

TEST(EntropyCovariance, SingleCellIsInconclusive) {
  const PhaseGrid grid(64);
  GridFunction point(grid);
  point(0, 0) = 64.0;
  const auto r = entropy_covariance_check(point);
  EXPECT_EQ(r.status, CheckStatus::inconclusive);
  EXPECT_NEAR(r.lhs, std::exp(-0.5 * std::log(64.0)), 1e-12);
}

TEST(EntropyCovariance, GaussianPairPasses) {
  const int d = 128;
  const auto h = hermite_basis(d, 2);
  const auto st = total_correlation(gen_hermite_pair_state(0.5, h[0], h[1]));
  const auto r = entropy_covariance_check(st);
  EXPECT_EQ(r.status, CheckStatus::pass) << r.lhs << " " << r.rhs << " " << r.edge_mass;
  // A single Gaussian nearly attains equality.
  const auto g = entropy_covariance_check(total_correlation(rank_one(gaussian_window(d))));
  EXPECT_EQ(g.status, CheckStatus::pass);
  EXPECT_NEAR(g.lhs / g.rhs, 1.0, 0.05);
}

TEST(EntropyCovariance, ShiftedMassIsRecentred) {
  const int d = 64;
  auto st = total_correlation(rank_one(gaussian_window(d)));
  GridFunction moved(st.grid());
  for (int m = 0; m < d; ++m) {
    for (int n = 0; n < d; ++n) moved(m + 20, n + 7) = st(m, n);
  }
  const auto a = entropy_covariance_check(st);
  const auto b = entropy_covariance_check(moved);
  EXPECT_NEAR(a.rhs, b.rhs, 1e-10);
  EXPECT_EQ(b.center, (GridIndex{20, 7}));
}

TEST(AsymptoticScan, ReachesZeroOnFullTorus) {
  std::mt19937_64 rng(17);
  const int d = 36;
  const HermitianOperator s(oracle::random_state(d, 2, rng));
  const auto st = total_correlation(s);
  const Domain base = make_rect_domain(PhaseGrid(d), 2.0, 2.0);
  const auto scan = asymptotic_alc_scan(st, base.descriptor(), {1.0, 1.5, 3.0});
  ASSERT_EQ(scan.size(), 3u);
  EXPECT_NEAR(scan.back().alc, 0.0, 1e-12);
  EXPECT_GT(scan.front().alc, scan.back().alc);
  EXPECT_THROW(asymptotic_alc_scan(st, base.descriptor(), {3.5}), std::invalid_argument);
}

TEST(AsymptoticScan, GaussianDecreases) {
  const int d = 144;
  const auto st = total_correlation(rank_one(gaussian_window(d)));
  const Domain base = make_rect_domain(PhaseGrid(d), 4.0, 3.6);
  const auto scan = asymptotic_alc_scan(st, base.descriptor(), {1.0, 1.5, 2.0, 3.0});
  for (std::size_t i = 1; i < scan.size(); ++i) EXPECT_LT(scan[i].alc, scan[i - 1].alc);
}

TEST(GeneralBerezinLieb, RandomInstances) {
  std::mt19937_64 rng(18);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 12 + trial % 9;
    const PhaseGrid grid(d);
    const HermitianOperator t(oracle::random_state(d, 1 + trial % 3, rng));
    const HermitianOperator s(oracle::random_state(d, 2, rng));
    const auto a = mixed_state_localization(random_rect(grid, rng), s);
    RMatrix f(d, d);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) f(i, j) = u(rng);
    }
    const auto r = general_berezin_lieb_check(a, t, GridFunction(grid, f));
    EXPECT_TRUE(r.pass) << r.op_lhs << " " << r.op_rhs << " " << r.fn_lhs << " " << r.fn_rhs;
  }
}

TEST(GeneralBerezinLieb, IdentityIsEquality) {
  std::mt19937_64 rng(19);
  const int d = 10;
  const HermitianOperator t(oracle::random_state(d, 2, rng));
  const auto r = general_berezin_lieb_check(HermitianOperator::identity(d), t, constant_grid(PhaseGrid(d), 1.0));
  EXPECT_NEAR(r.op_lhs, 0.0, 1e-12);
  EXPECT_NEAR(r.op_rhs, 0.0, 1e-12);
  EXPECT_NEAR(r.fn_lhs, 0.0, 1e-12);
  EXPECT_TRUE(r.pass);
}

TEST(Projection, BoundedByEntropyEigenwise) {
  std::mt19937_64 rng(20);
  const PhaseGrid grid(20);
  for (int trial = 0; trial < 10; ++trial) {
    const HermitianOperator s(oracle::random_state(20, 2, rng));
    const auto local = mixed_state_localization(random_rect(grid, rng), s);
    const double p = projection_functional_spectral(local);
    EXPECT_LE(p, entropy_of_eigenvalues(hermitian_eigenvalues(local.matrix()).cwiseMax(0.0)) + 1e-10);
  }
}

}  // namespace
}  // namespace qha
