#include "oracles.hpp"
#include "qha/augmentation.hpp"
#include "qha/datasets.hpp"
#include "qha/metrics.hpp"
#include "qha/operators.hpp"
#include "qha/tf.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

namespace qha {
namespace {

std::vector<CVector> signals_of(const DataSet& data) {
  std::vector<CVector> out;
  for (const auto& s : data.signals()) out.push_back(s.values());
  return out;
}

class IdentitySweep : public ::testing::TestWithParam<int> {};

TEST_P(IdentitySweep, MoyalAgainstDirectStft) {
  const int d = GetParam();
  std::mt19937_64 rng(100 + d);
  for (int trial = 0; trial < 5; ++trial) {
    const CVector f1 = oracle::random_vector(d, rng);
    const CVector f2 = oracle::random_vector(d, rng);
    const CVector g1 = oracle::random_vector(d, rng);
    const CVector g2 = oracle::random_vector(d, rng);
    const auto v1 = stft(Signal(f1), Signal(g1));
    const auto v2 = stft(Signal(f2), Signal(g2));
    const Complex lhs = (v2.values().conjugate().cwiseProduct(v1.values())).sum() / static_cast<double>(d);
    const Complex rhs = f2.dot(f1) * std::conj(g2.dot(g1));
    EXPECT_LT(std::abs(lhs - rhs), 1e-10 * (1.0 + std::abs(rhs)));
  }
}

TEST_P(IdentitySweep, TotalCorrelationAgainstDoubleSum) {
  const int d = GetParam();
  const DataSet data = gen_random_signals(4, d, static_cast<std::uint64_t>(d));
  const auto st = total_correlation(data_operator(data));
  EXPECT_LT(oracle::max_abs(st.values() - oracle::total_correlation(signals_of(data))), 1e-12);
  EXPECT_NEAR(grid_integrate(st), 1.0, 1e-12);
}

TEST_P(IdentitySweep, CohenClassOfDataOperatorIsSpectrogramSum) {
  const int d = GetParam();
  std::mt19937_64 rng(200 + d);
  const DataSet data = gen_random_signals(3, d, 9);
  const CVector f = oracle::random_vector(d, rng);
  RMatrix expected = RMatrix::Zero(d, d);
  for (const auto& fi : signals_of(data)) expected += oracle::spectrogram(f, fi);
  EXPECT_LT(oracle::max_abs(cohen_class(data_operator(data), Signal(f)).values() - expected), 1e-10);
}

TEST_P(IdentitySweep, LocalizationAgainstDefinitionSum) {
  const int d = GetParam();
  std::mt19937_64 rng(300 + d);
  const HermitianOperator s(oracle::random_state(d, 2, rng));
  const Domain omega = make_rect_domain(PhaseGrid(d), 0.6 * std::sqrt(d), 0.4 * std::sqrt(d), 0.2, -0.1);
  const CMatrix expected = oracle::fn_op(omega.indicator().values(), s.matrix());
  EXPECT_LT(oracle::max_abs(mixed_state_localization(omega, s).matrix() - expected), 1e-11);
  EXPECT_NEAR(expected.trace().real(), omega.measure(), 1e-10);
}

TEST_P(IdentitySweep, AlcRoutesAgree) {
  const int d = GetParam();
  std::mt19937_64 rng(400 + d);
  for (int trial = 0; trial < 5; ++trial) {
    const HermitianOperator s(oracle::random_state(d, 1 + trial, rng));
    const Domain omega = make_rect_domain(PhaseGrid(d), 0.5 * std::sqrt(d), 0.3 * std::sqrt(d));
    const auto st = total_correlation(s);
    std::vector<std::pair<int, int>> cells;
    for (int m = 0; m < d; ++m) {
      for (int n = 0; n < d; ++n) {
        if (omega.mask()(m, n)) cells.emplace_back(m, n);
      }
    }
    const double direct = oracle::alc(st.values(), cells);
    EXPECT_NEAR(alc(st, omega), direct, 1e-12);
    EXPECT_NEAR(omega.measure() * direct, projection_functional_spectral(mixed_state_localization(omega, s)), 1e-8);
    EXPECT_LT(oracle::max_abs(total_correlation_spectral(s).values() - st.values()), 1e-10);
  }
}

INSTANTIATE_TEST_SUITE_P(Dims, IdentitySweep, ::testing::Values(8, 16, 32));

TEST(Theorems, GaussianFamilyAtLargerDimension) {
  const int d = 144;
  const PhaseGrid grid(d);
  const auto s = data_operator(gen_gaussian_combos(20, d, 4));
  for (double scale : {1.0, 1.3, 1.6}) {
    for (auto [w, h] : {std::pair{2.45, 2.45}, std::pair{4.0, 1.49}, std::pair{1.49, 4.0}}) {
      const Domain omega = make_rect_domain(grid, w * scale, h * scale);
      EXPECT_TRUE(berezin_lieb_check(s, omega).pass);
      EXPECT_TRUE(lemma_alc_lower_bound(s, omega).pass);
      EXPECT_TRUE(finite_rank_check(s, omega).pass);
      EXPECT_NE(perimeter_bound_check(s, omega).status, CheckStatus::fail);
    }
  }
  EXPECT_NE(entropy_covariance_check(total_correlation(s)).status, CheckStatus::fail);
}

TEST(Theorems, PerimeterBoundIsInformativeForConcentratedState) {
  const int d = 196;
  const auto s = rank_one(gaussian_window(d));
  const auto r = perimeter_bound_check(s, make_rect_domain(PhaseGrid(d), 6.0, 6.0));
  EXPECT_EQ(r.status, CheckStatus::pass);
  EXPECT_LT(r.bound, 1.0);
  EXPECT_LE(r.alc, r.bound);
}

}  // namespace
}  // namespace qha
