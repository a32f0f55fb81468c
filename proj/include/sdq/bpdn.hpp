#pragma once

#include "sdq/matrix.hpp"

namespace sdq {

// min ‖z‖₁ subject to ‖Φz − q‖₂ ≤ epsilon.
struct BpdnConfig {
  double epsilon = 0.0;
  int max_iters = 50000;
  double primal_tol = 1e-8;
  double dual_tol = 1e-8;
  // Iterations between attempts to certify optimality on the current support.
  int polish_every = 50;

  void validate() const;
};

struct BpdnResult {
  Vector x;
  int iterations = 0;
  // Stopping rule met (or optimality certified).
  bool converged = false;
  // x satisfies the KKT conditions on its support: exact minimizer.
  bool certified = false;
  double residual_norm = 0.0;  // ‖Φx − q‖₂
  double objective = 0.0;      // ‖x‖₁
};

// Primal-dual splitting (Chambolle-Pock: soft thresholding on the ℓ1 term,
// projection onto the residual ball for the constraint) with periodic
// active-set polishing. When the cap is reached the last iterate is returned
// with converged = false.
BpdnResult bpdn_solve(const Matrix& phi, std::span<const double> q,
                      const BpdnConfig& cfg);

// Power-method estimate of ‖Φ‖_{2→2}.
double estimate_operator_norm(const Matrix& phi, int iters = 200);

}  // namespace sdq
