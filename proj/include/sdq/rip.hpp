#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "sdq/measurement.hpp"

namespace sdq {

enum class RipMode { Exact, MonteCarlo };

std::string to_string(RipMode mode);

struct RipEstimate {
  Index s = 0;
  double value = 0.0;
  RipMode mode = RipMode::Exact;
  std::uint64_t supports_checked = 0;
};

// Exhaustive enumeration would exceed the configured cap.
class EnumerationCapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

// Number of s-subsets of n items; saturates at UINT64_MAX.
std::uint64_t binomial_count(Index n, Index s);

// max over |T| = s of max(λ_max(A_TᵀA_T) − 1, 1 − λ_min(A_TᵀA_T)).
// The caller normalizes `a`; nothing is rescaled here.
double support_distortion(const Matrix& a, std::span<const Index> support);

// δ_s by lexicographic enumeration of every support.
RipEstimate ric_exact(const Matrix& a, Index s,
                      std::uint64_t cap = kDefaultEnumerationCap);

// Running maximum over `trials` uniformly sampled supports: a lower bound
// on δ_s.
RipEstimate ric_monte_carlo(const Matrix& a, Index s, std::uint64_t trials,
                            RngStream& rng);

// (1/√ell)·P_ell·Vᵀ_{D^{-r}}·Φ, an ell × N matrix.
Matrix projected_matrix(const Matrix& phi, int r, Index ell);

struct SmallBallSummary {
  std::uint64_t trials = 0;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
  // (probability, quantile) pairs, probabilities ascending.
  std::vector<std::pair<double, double>> quantiles;
};

// Empirical law of ‖P_ell·Vᵀ_{D^{-r}}·Φ_j‖₂² over independent columns Φ_j.
SmallBallSummary small_ball_probe(const Ensemble& ensemble, Index m, int r,
                                  Index ell, std::uint64_t trials,
                                  RngStream& rng);

}  // namespace sdq
