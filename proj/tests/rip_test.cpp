#include "sdq/rip.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "sdq/difference.hpp"
#include "sdq/linalg.hpp"
#include "test_util.hpp"

namespace sdq {
namespace {

Matrix normalized_gaussian(Index m, Index n, std::uint64_t seed) {
  RngStream rng(seed);
  Matrix a = sample_matrix({EnsembleKind::Gaussian}, m, n, rng);
  a *= 1.0 / std::sqrt(static_cast<double>(m));
  return a;
}

TEST(RicExact, OrthonormalColumns) {
  const Matrix q = svd(testing::random_matrix(6, 4, 1)).U;
  const RipEstimate est = ric_exact(q, 1);
  EXPECT_NEAR(est.value, 0.0, 1e-12);
  EXPECT_EQ(est.supports_checked, 4u);
  EXPECT_NEAR(ric_exact(q, 4).value, 0.0, 1e-12);
}

TEST(RicExact, DuplicateColumns) {
  // Gram [[1,1],[1,1]] has eigenvalues {0, 2}.
  const RipEstimate est = ric_exact(Matrix{{1, 1}, {0, 0}}, 2);
  EXPECT_NEAR(est.value, 1.0, 1e-14);
  EXPECT_EQ(est.supports_checked, 1u);
}

TEST(RicExact, CountsAndMonotoneInOrder) {
  const Matrix a = normalized_gaussian(12, 9, 2);
  double prev = 0.0;
  for (Index s = 1; s <= 5; ++s) {
    const RipEstimate est = ric_exact(a, s);
    EXPECT_EQ(est.supports_checked, binomial_count(9, s));
    EXPECT_GE(est.value, prev);
    prev = est.value;
  }
}

TEST(RicExact, CapIsEnforced) {
  const Matrix a = normalized_gaussian(5, 30, 3);
  EXPECT_THROW(ric_exact(a, 3, 100), EnumerationCapError);
  EXPECT_EQ(binomial_count(30, 3), 4060u);
  EXPECT_EQ(binomial_count(3, 5), 0u);
}

TEST(RicMonteCarlo, ExhaustiveSamplingMatchesExact) {
  const Matrix a = normalized_gaussian(10, 6, 4);
  RngStream rng(5);
  // C(6, 2) = 15 supports; 2000 draws miss one with probability ~1e-58.
  EXPECT_DOUBLE_EQ(ric_monte_carlo(a, 2, 2000, rng).value,
                   ric_exact(a, 2).value);
}

TEST(RicMonteCarlo, NeverExceedsExactAndGrowsWithTrials) {
  const Matrix a = normalized_gaussian(15, 14, 6);
  const double exact = ric_exact(a, 3).value;
  double prev = 0.0;
  for (std::uint64_t trials : {1, 10, 100, 1000}) {
    RngStream rng(7);  // same prefix: nested sample sets
    const RipEstimate est = ric_monte_carlo(a, 3, trials, rng);
    EXPECT_EQ(est.supports_checked, trials);
    EXPECT_LE(est.value, exact);
    EXPECT_GE(est.value, prev);
    prev = est.value;
  }
}

TEST(RicMonteCarlo, GaussianInRipRegime) {
  const Matrix a = normalized_gaussian(200, 40, 8);
  RngStream rng(9);
  EXPECT_LT(ric_monte_carlo(a, 4, 2000, rng).value, 1.0 / std::sqrt(2.0));
}

TEST(Rip, TwoSidedBoundHoldsForSparseVectors) {
  const Matrix a = normalized_gaussian(20, 12, 10);
  const double delta = ric_exact(a, 3).value;
  RngStream rng(11);
  for (int t = 0; t < 500; ++t) {
    const SparseSignal sig = sample_sparse_signal(12, 3, 0.1, 1.0, rng);
    Vector x = sig.dense();
    const double nx = norm2(x);
    for (double& v : x) v /= nx;
    const double ax = norm2(matvec(a, x));
    EXPECT_LE(ax * ax, 1.0 + delta + 1e-12);
    EXPECT_GE(ax * ax, 1.0 - delta - 1e-12);
  }
}

TEST(ProjectedMatrix, ShapeAndFullProjection) {
  const Index m = 30;
  const Matrix q = svd(testing::random_matrix(m, 5, 12)).U;  // orthonormal
  const Matrix p = projected_matrix(q, 2, m);
  EXPECT_EQ(p.rows(), m);
  EXPECT_LE(max_abs_diff(matmul_tn(p, p),
                         (1.0 / static_cast<double>(m)) * Matrix::identity(5)),
            1e-12);
  EXPECT_EQ(projected_matrix(q, 1, 7).rows(), 7u);
}

TEST(SmallBall, GaussianMeanIsEll) {
  RngStream rng(13);
  const SmallBallSummary sb =
      small_ball_probe({EnsembleKind::Gaussian}, 100, 2, 20, 10000, rng);
  EXPECT_NEAR(sb.mean / 20.0, 1.0, 0.05);
  double prev = 0.0;
  for (const auto& [p, v] : sb.quantiles) {
    EXPECT_GE(v, 0.0);
    EXPECT_GE(v, prev);
    prev = v;
  }
  EXPECT_LE(sb.min, sb.quantiles.front().second);
  EXPECT_GE(sb.max, sb.quantiles.back().second);
}

TEST(SmallBall, FullProjectionPreservesNorm) {
  const Index m = 25;
  RngStream a(14), b(14);
  const SmallBallSummary sb =
      small_ball_probe({EnsembleKind::Rademacher}, m, 1, m, 50, a);
  // Rademacher columns have squared norm exactly m.
  EXPECT_NEAR(sb.min, 25.0, 1e-10);
  EXPECT_NEAR(sb.max, 25.0, 1e-10);
  const SmallBallSummary cm =
      small_ball_probe({EnsembleKind::ColumnModel}, m, 2, m, 40, b);
  RngStream c(14);
  const Matrix cols = sample_matrix({EnsembleKind::ColumnModel}, m, 40, c);
  double sum = 0.0;
  for (Index j = 0; j < 40; ++j) {
    const Vector col = cols.col(j);
    sum += dot(col, col);
  }
  EXPECT_NEAR(cm.mean, sum / 40.0, 1e-9);
}

}  // namespace
}  // namespace sdq
