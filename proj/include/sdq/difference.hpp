#pragma once

#include <memory>

#include "sdq/linalg.hpp"

namespace sdq {

// D^{-r} of size m together with its SVD. Immutable once built.
struct DifferencePower {
  Index m = 0;
  int r = 0;
  Matrix inv_power;
  SvdFactors factors;
};

// Bidiagonal first-difference matrix: 1 on the diagonal, -1 below it.
Matrix build_D(Index m);

// D^{-r} from the closed form (i, j) -> binom(i - j + r - 1, r - 1), i >= j.
Matrix inverse_power(Index m, int r);

// D^r by repeated multiplication.
Matrix difference_power_matrix(Index m, int r);

// Process-wide cache keyed by (m, r); thread-safe.
std::shared_ptr<const DifferencePower> difference_power(Index m, int r);

// Singular values of D^{-r}, non-increasing.
Vector singular_profile(Index m, int r);

// First `ell` rows of Vᵀ from the SVD of D^{-r}: an ell × m matrix with
// orthonormal rows.
Matrix projected_basis(Index m, int r, Index ell);

// D^{-r}·v as r running sums; O(m·r) and exact on integer data.
Vector apply_inverse_power(std::span<const double> v, int r);
Matrix apply_inverse_power(const Matrix& a, int r);

// D^r·v as r first differences.
Vector apply_power(std::span<const double> v, int r);

}  // namespace sdq
