#include "sdq/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace sdq {

Ensemble parse_ensemble(std::string_view name) {
  if (name == "gaussian") return {EnsembleKind::Gaussian};
  if (name == "rademacher") return {EnsembleKind::Rademacher};
  if (name == "column-model") return {EnsembleKind::ColumnModel};
  throw std::invalid_argument("unknown ensemble '" + std::string(name) +
                              "' (gaussian|rademacher|column-model)");
}

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Gaussian:
      return "gaussian";
    case EnsembleKind::Rademacher:
      return "rademacher";
    case EnsembleKind::ColumnModel:
      return "column-model";
  }
  return "unknown";
}

Matrix column_model_sqrt(Index m, double correlation) {
  if (!(std::abs(correlation) < 0.5))
    throw std::invalid_argument("column correlation must satisfy |c| < 0.5");
  // Eigenvectors sin(i·k·π/(m+1))·sqrt(2/(m+1)),
  // eigenvalues 1 + 2c·cos(k·π/(m+1)).
  const double h = std::numbers::pi / static_cast<double>(m + 1);
  const double norm = std::sqrt(2.0 / static_cast<double>(m + 1));
  Matrix q(m, m);
  Vector root(m);
  for (Index k = 0; k < m; ++k) {
    root[k] = std::sqrt(1.0 + 2.0 * correlation *
                                  std::cos(static_cast<double>(k + 1) * h));
    for (Index i = 0; i < m; ++i)
      q(i, k) = norm * std::sin(static_cast<double>((i + 1) * (k + 1)) * h);
  }
  Matrix out(m, m);
  for (Index i = 0; i < m; ++i) {
    for (Index j = i; j < m; ++j) {
      double acc = 0.0;
      for (Index k = 0; k < m; ++k) acc += q(i, k) * root[k] * q(j, k);
      out(i, j) = acc;
      out(j, i) = acc;
    }
  }
  return out;
}

namespace {

std::shared_ptr<const Matrix> cached_column_sqrt(Index m, double c) {
  static std::mutex mutex;
  static std::map<std::pair<Index, double>, std::shared_ptr<const Matrix>>
      cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{m, c}];
  if (!slot) slot = std::make_shared<const Matrix>(column_model_sqrt(m, c));
  return slot;
}

}  // namespace

Matrix sample_matrix(const Ensemble& ensemble, Index m, Index n,
                     RngStream& rng) {
  if (m < 1 || n < 1) throw DimensionError("sample_matrix: empty shape");
  Matrix a(m, n);
  switch (ensemble.kind) {
    case EnsembleKind::Gaussian:
      for (double& x : a.data()) x = rng.gaussian();
      break;
    case EnsembleKind::Rademacher:
      for (double& x : a.data()) x = rng.rademacher();
      break;
    case EnsembleKind::ColumnModel: {
      const auto root = cached_column_sqrt(m, ensemble.column_correlation);
      Vector g(m);
      for (Index j = 0; j < n; ++j) {
        for (double& x : g) x = rng.rademacher();
        const Vector col = matvec(*root, g);
        for (Index i = 0; i < m; ++i) a(i, j) = col[i];
      }
      break;
    }
  }
  return a;
}

Vector SparseSignal::dense() const {
  Vector x(n, 0.0);
  for (Index k = 0; k < support.size(); ++k) x[support[k]] = values[k];
  return x;
}

SparseSignal sample_sparse_signal(Index n, Index s, double floor,
                                  double magnitude_cap, RngStream& rng) {
  if (s < 1 || s > n)
    throw std::invalid_argument("sample_sparse_signal: need 1 <= s <= n");
  if (!(floor > 0.0) || !std::isfinite(magnitude_cap))
    throw std::invalid_argument("sample_sparse_signal: floor must be > 0");
  if (floor > magnitude_cap)
    throw std::invalid_argument(
        "sample_sparse_signal: floor exceeds magnitude cap");

  std::vector<Index> perm(n);
  for (Index i = 0; i < n; ++i) perm[i] = i;
  for (Index i = 0; i < s; ++i) {
    const Index j = i + static_cast<Index>(rng.uniform_index(n - i));
    std::swap(perm[i], perm[j]);
  }
  SparseSignal sig;
  sig.n = n;
  sig.amplitude_floor = floor;
  sig.support.assign(perm.begin(), perm.begin() + static_cast<long>(s));
  std::sort(sig.support.begin(), sig.support.end());
  sig.values.resize(s);
  for (double& v : sig.values) {
    const double mag = rng.uniform(floor, magnitude_cap);
    v = rng.rademacher() * mag;
  }
  return sig;
}

double amplitude_floor(double k, int r, double delta) {
  return k * std::pow(2.0, r - 0.5) * delta;
}

}  // namespace sdq
