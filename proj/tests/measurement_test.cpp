#include "sdq/measurement.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "sdq/difference.hpp"

namespace sdq {
namespace {

struct Moments {
  double mean;
  double var;
};

Moments moments(std::span<const double> v) {
  double s1 = 0.0, s2 = 0.0;
  for (double x : v) {
    s1 += x;
    s2 += x * x;
  }
  const double n = static_cast<double>(v.size());
  const double mean = s1 / n;
  return {mean, s2 / n - mean * mean};
}

TEST(SampleMatrix, RademacherEntriesAreSigns) {
  RngStream rng(1);
  const Matrix a = sample_matrix({EnsembleKind::Rademacher}, 30, 40, rng);
  for (double x : a.data()) ASSERT_TRUE(x == 1.0 || x == -1.0);
}

TEST(SampleMatrix, GaussianMomentsAtTenToTheFive) {
  RngStream rng(2);
  const Matrix a = sample_matrix({EnsembleKind::Gaussian}, 250, 400, rng);
  const Moments mo = moments(a.data());
  EXPECT_GT(mo.mean, -0.02);
  EXPECT_LT(mo.mean, 0.02);
  EXPECT_GT(mo.var, 0.97);
  EXPECT_LT(mo.var, 1.03);
}

TEST(SampleMatrix, FixedSeedIsBitwiseReproducible) {
  for (auto kind : {EnsembleKind::Gaussian, EnsembleKind::Rademacher,
                    EnsembleKind::ColumnModel}) {
    RngStream a(9), b(9);
    EXPECT_EQ(sample_matrix({kind}, 12, 7, a), sample_matrix({kind}, 12, 7, b));
  }
}

TEST(SampleMatrix, ColumnModelHasUnitVarianceEntries) {
  const Matrix root = column_model_sqrt(20, 0.3);
  const Matrix sigma = matmul(root, root);
  for (Index i = 0; i < 20; ++i) {
    for (Index j = 0; j < 20; ++j) {
      const double expect = i == j ? 1.0 : (i + 1 == j || j + 1 == i) ? 0.3 : 0.0;
      EXPECT_NEAR(sigma(i, j), expect, 1e-12);
    }
  }
  RngStream rng(4);
  const Matrix a = sample_matrix({EnsembleKind::ColumnModel}, 20, 5000, rng);
  const Moments mo = moments(a.data());
  EXPECT_NEAR(mo.mean, 0.0, 0.02);
  EXPECT_NEAR(mo.var, 1.0, 0.03);
  // Neighbouring entries of one column are correlated.
  double cov = 0.0;
  for (Index j = 0; j < a.cols(); ++j) cov += a(3, j) * a(4, j);
  EXPECT_NEAR(cov / a.cols(), 0.3, 0.05);
}

TEST(SampleMatrix, RejectsBadEnsembleName) {
  EXPECT_THROW(parse_ensemble("bernoulli"), std::invalid_argument);
  EXPECT_EQ(parse_ensemble("column-model").kind, EnsembleKind::ColumnModel);
  EXPECT_THROW(column_model_sqrt(5, 0.6), std::invalid_argument);
}

TEST(SampleMatrix, ProjectedGaussianStaysStandard) {
  const Index m = 200, ell = 100, n = 1000;
  RngStream rng(5);
  const Matrix phi = sample_matrix({EnsembleKind::Gaussian}, m, n, rng);
  const Matrix wphi = matmul(projected_basis(m, 2, ell), phi);
  const Moments mo = moments(wphi.data());
  EXPECT_GT(mo.mean, -0.02);
  EXPECT_LT(mo.mean, 0.02);
  EXPECT_GT(mo.var, 0.97);
  EXPECT_LT(mo.var, 1.03);
}

TEST(SparseSignal, FullSupport) {
  RngStream rng(6);
  const SparseSignal sig = sample_sparse_signal(5, 5, 0.1, 1.0, rng);
  EXPECT_EQ(sig.support, (IndexSet{0, 1, 2, 3, 4}));
}

TEST(SparseSignal, FloorAndZerosOffSupport) {
  RngStream rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const SparseSignal sig = sample_sparse_signal(50, 6, 0.25, 2.5, rng);
    ASSERT_EQ(sig.support.size(), 6u);
    const Vector x = sig.dense();
    Index nonzero = 0;
    for (double v : x) {
      if (v == 0.0) continue;
      ++nonzero;
      EXPECT_GE(std::abs(v), 0.25);
      EXPECT_LE(std::abs(v), 2.5);
    }
    EXPECT_EQ(nonzero, 6u);
    for (Index k = 1; k < sig.support.size(); ++k)
      EXPECT_LT(sig.support[k - 1], sig.support[k]);
  }
}

TEST(SparseSignal, SupportIsUniform) {
  // Binomial(10⁴, 1/4): sd ≈ 0.0043, so ±0.02 is > 4.5 sd.
  RngStream rng(8);
  std::array<int, 4> hits{};
  const int draws = 10000;
  for (int i = 0; i < draws; ++i)
    ++hits[sample_sparse_signal(4, 1, 1.0, 1.0, rng).support[0]];
  for (int h : hits) EXPECT_NEAR(static_cast<double>(h) / draws, 0.25, 0.02);
}

TEST(SparseSignal, RejectsFloorAboveCap) {
  RngStream rng(9);
  EXPECT_THROW(sample_sparse_signal(10, 2, 2.0, 1.0, rng),
               std::invalid_argument);
  EXPECT_THROW(sample_sparse_signal(10, 0, 1.0, 2.0, rng),
               std::invalid_argument);
  EXPECT_THROW(sample_sparse_signal(10, 11, 1.0, 2.0, rng),
               std::invalid_argument);
}

TEST(SparseSignal, AmplitudeFloorFormula) {
  EXPECT_NEAR(amplitude_floor(1.0, 1, 1.0), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(amplitude_floor(2.0, 2, 0.01), 2.0 * std::pow(2.0, 1.5) * 0.01,
              1e-15);
}

}  // namespace
}  // namespace sdq
