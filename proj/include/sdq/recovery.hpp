#pragma once

#include <optional>
#include <stdexcept>

#include "sdq/bpdn.hpp"
#include "sdq/measurement.hpp"
#include "sdq/quantizer.hpp"

namespace sdq {

// D^{-r}·Φ_T is (numerically) rank deficient: a degenerate draw.
class RankDeficientError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Indices of the s largest magnitudes, ties toward the smaller index;
// returned ascending.
IndexSet support_from(std::span<const double> x_prime, Index s);

// Sobolev dual L = (D^{-r}Φ_T)† D^{-r}: the left inverse of Φ_T minimizing
// ‖L·D^r‖₂. Rows index the support.
Matrix sobolev_dual(const Matrix& phi_t, int r);

// x̂ with x̂_T = (D^{-r}Φ_T)†·(D^{-r}q), zero off T.
Vector sobolev_reconstruct(const Matrix& phi, std::span<const Index> support,
                           std::span<const double> q, int r);

// Δ√m / (2·σ_min(D^{-r}Φ_T)).
double error_bound_eq3(const Matrix& phi_t, int r, double delta);

// ⌈m·(s/m)^α⌉ clamped to [1, m].
Index projection_ell(Index m, Index s, double alpha);

enum class QuantizerKind { SigmaDelta, Msq };

struct PipelineConfig {
  Ensemble ensemble;
  Index n = 256;
  Index s = 5;
  Index m = 200;
  int r = 2;
  double delta = 0.01;
  double alpha = 0.7;
  double k_floor = 1.0;          // K in the amplitude floor K·2^{r-1/2}·Δ
  double magnitude_ratio = 10.0;  // cap = ratio · floor
  std::optional<double> epsilon;  // overrides the noise-bound radius
  QuantizerKind quantizer = QuantizerKind::SigmaDelta;
  BpdnConfig bpdn;

  void validate() const;
};

struct RecoveryReport {
  IndexSet true_support;
  IndexSet recovered_support;
  Vector x_hat;
  double err_l2 = 0.0;
  double bound_eq3 = 0.0;
  // σ_min((1/√ℓ)·P_ℓ·Vᵀ·Φ_T) on the recovered support.
  double sigma_min_proj = 0.0;
  Index ell = 0;
  double epsilon = 0.0;
  bool support_correct = false;
  // s-th and (s+1)-th magnitudes of the ℓ1 solution within 1e-9.
  bool support_tie = false;
  bool bpdn_converged = false;
  bool bpdn_certified = false;
  // Sobolev system was rank deficient; x_hat is zero, bound infinite.
  bool degenerate = false;
};

// Samples Φ and x from `rng`, quantizes y = Φx, recovers the support with
// ℓ1 minimization and reconstructs on it. With QuantizerKind::Msq the
// quantizer is MSQ, the radius Δ√m/2 and the reconstruction Φ_T†q (the
// bound is then Δ√m / (2σ_min(Φ_T))).
RecoveryReport full_pipeline(const PipelineConfig& cfg, RngStream rng);

}  // namespace sdq
