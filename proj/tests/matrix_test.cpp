#include "sdq/matrix.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace sdq {
namespace {

TEST(Matrix, IdentityTimesA) {
  const Matrix a = testing::random_matrix(3, 4, 1);
  EXPECT_EQ(matmul(Matrix::identity(3), a), a);
}

TEST(Matrix, HandProduct) {
  const Matrix a{{1, 2}, {3, 4}};
  const Matrix b{{1}, {1}};
  EXPECT_EQ(matmul(a, b), (Matrix{{3}, {7}}));
}

TEST(Matrix, MatchesTripleLoop) {
  const Matrix a = testing::random_matrix(3, 4, 2);
  const Matrix b = testing::random_matrix(4, 2, 3);
  const Matrix c = matmul(a, b);
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 2; ++j) {
      double acc = 0.0;
      for (Index k = 0; k < 4; ++k) acc += a(i, k) * b(k, j);
      EXPECT_NEAR(c(i, j), acc, 1e-14);
    }
  }
  EXPECT_LT(max_abs_diff(matmul_tn(a.transpose(), b), c), 1e-14);
}

TEST(Matrix, DimensionMismatchThrows) {
  EXPECT_THROW(matmul(Matrix(2, 3), Matrix(2, 3)), DimensionError);
  EXPECT_THROW(matvec(Matrix(2, 3), Vector(2)), DimensionError);
  EXPECT_THROW(Matrix(2, 2, std::vector<double>(3)), DimensionError);
}

TEST(Matrix, RejectsNonFinite) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(Matrix(1, 2, std::vector<double>{1.0, nan}), NonFiniteError);
  std::istringstream in("1 2\n1 inf\n");
  EXPECT_ANY_THROW(read_matrix(in));
}

TEST(Matrix, FixtureRoundTripIsExact) {
  const Matrix a = testing::random_matrix(5, 7, 4);
  std::stringstream buf;
  write_matrix(buf, a);
  EXPECT_EQ(read_matrix(buf), a);
}

TEST(Matrix, FixtureErrors) {
  std::istringstream truncated("2 2\n1 2\n3\n");
  EXPECT_THROW(read_matrix(truncated), std::runtime_error);
  std::istringstream bad_header("0 3\n");
  EXPECT_THROW(read_matrix(bad_header), std::runtime_error);
}

TEST(Matrix, ReadVectorAcceptsCommasAndNewlines) {
  std::istringstream in("1.5, -2\n3e-1\n");
  EXPECT_EQ(read_vector(in), (Vector{1.5, -2.0, 0.3}));
}

TEST(Matrix, Norm2AvoidsOverflow) {
  const Vector v{1e200, 1e200};
  EXPECT_NEAR(norm2(v) / 1e200, std::sqrt(2.0), 1e-15);
}

}  // namespace
}  // namespace sdq
