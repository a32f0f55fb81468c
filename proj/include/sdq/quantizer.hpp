#pragma once

#include "sdq/matrix.hpp"

namespace sdq {

// Order-r greedy ΣΔ over the infinite alphabet ΔZ.
struct QuantizerConfig {
  int r = 1;
  double delta = 1.0;

  void validate() const;
};

struct QuantizationOutput {
  Vector q;  // alphabet values, integer multiples of delta
  Vector u;  // internal state; satisfies D^r u = y − q
};

// u_i = y_i + h_i − q_i with h_i = Σ_{j=1..r} (−1)^{j+1} C(r, j) u_{i−j},
// q_i the nearest point of ΔZ to y_i + h_i (ties away from zero), and
// u_0 = u_{−1} = … = 0.
QuantizationOutput sigma_delta_quantize(std::span<const double> y,
                                        const QuantizerConfig& cfg);

// Memoryless scalar quantization: Δ·round(y_i / Δ).
Vector msq_quantize(std::span<const double> y, double delta);

// 2^{r−1}·Δ·√m, an upper bound on ‖q − y‖₂ for any greedy run of length m.
double quantization_noise_bound(Index m, const QuantizerConfig& cfg);

}  // namespace sdq
