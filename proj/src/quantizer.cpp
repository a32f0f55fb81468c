#include "sdq/quantizer.hpp"

#include <cmath>
#include <stdexcept>

namespace sdq {

void QuantizerConfig::validate() const {
  if (r < 1) throw std::invalid_argument("quantizer order r must be >= 1");
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("quantizer step delta must be finite and > 0");
}

QuantizationOutput sigma_delta_quantize(std::span<const double> y,
                                        const QuantizerConfig& cfg) {
  cfg.validate();
  require_finite(y, "sigma_delta_quantize");
  const Index m = y.size();
  const auto r = static_cast<Index>(cfg.r);

  // Feedback weights (−1)^{j+1} C(r, j), j = 1..r.
  Vector weight(r + 1, 0.0);
  double binom = 1.0;
  for (Index j = 1; j <= r; ++j) {
    binom = binom * static_cast<double>(r - j + 1) / static_cast<double>(j);
    weight[j] = (j % 2 == 1 ? 1.0 : -1.0) * std::round(binom);
  }

  QuantizationOutput out{Vector(m), Vector(m)};
  for (Index i = 0; i < m; ++i) {
    double h = 0.0;
    for (Index j = 1; j <= r && j <= i; ++j) h += weight[j] * out.u[i - j];
    const double v = y[i] + h;
    out.q[i] = cfg.delta * std::round(v / cfg.delta);
    out.u[i] = v - out.q[i];
  }
  return out;
}

Vector msq_quantize(std::span<const double> y, double delta) {
  if (!(delta > 0.0) || !std::isfinite(delta))
    throw std::invalid_argument("msq step delta must be finite and > 0");
  require_finite(y, "msq_quantize");
  Vector q(y.size());
  for (Index i = 0; i < y.size(); ++i) q[i] = delta * std::round(y[i] / delta);
  return q;
}

double quantization_noise_bound(Index m, const QuantizerConfig& cfg) {
  cfg.validate();
  return std::ldexp(cfg.delta, cfg.r - 1) * std::sqrt(static_cast<double>(m));
}

}  // namespace sdq
