#pragma once

#include <stdexcept>

#include "sdq/matrix.hpp"

namespace sdq {

// Iteration cap hit before the Jacobi rotations fell below tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const { return residual_; }

 private:
  double residual_;
};

// Thin SVD: A = U·diag(S)·Vᵀ with U rows×k, V cols×k, k = min(rows, cols),
// S non-increasing.
struct SvdFactors {
  Matrix U;
  Vector S;
  Matrix V;
};

struct JacobiOptions {
  double tolerance = 1e-14;  // relative off-diagonal threshold
  int max_sweeps = 60;
};

// One-sided (Hestenes) Jacobi with cyclic sweeps.
SvdFactors svd(const Matrix& a, const JacobiOptions& opts = {});

// Singular values only; skips accumulation of V.
Vector singular_values(const Matrix& a, const JacobiOptions& opts = {});

// Eigenvalues of a symmetric matrix, non-increasing (cyclic Jacobi).
Vector symmetric_eigenvalues(const Matrix& a, const JacobiOptions& opts = {});

Matrix pseudoinverse(const Matrix& a, double rel_tol = 1e-12);

// j is 1-based: sigma_j(a, 1) is the largest singular value.
double sigma_j(const Matrix& a, Index j);
double sigma_min(const Matrix& a);
double operator_norm(const Matrix& a);

// Minimum-norm minimizer of ‖a·x − b‖₂.
Vector least_squares(const Matrix& a, std::span<const double> b,
                     double rel_tol = 1e-12);

}  // namespace sdq
