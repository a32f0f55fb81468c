#include "sdq/rip.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "sdq/difference.hpp"
#include "sdq/linalg.hpp"

namespace sdq {

__extension__ typedef unsigned __int128 u128;

std::string to_string(RipMode mode) {
  return mode == RipMode::Exact ? "exact" : "monte-carlo";
}

std::uint64_t binomial_count(Index n, Index s) {
  if (s > n) return 0;
  s = std::min(s, n - s);
  u128 c = 1;
  for (Index i = 1; i <= s; ++i) {
    c = c * (n - s + i) / i;
    if (c > std::numeric_limits<std::uint64_t>::max())
      return std::numeric_limits<std::uint64_t>::max();
  }
  return static_cast<std::uint64_t>(c);
}

double support_distortion(const Matrix& a, std::span<const Index> support) {
  const Index k = support.size();
  Matrix gram(k, k);
  for (Index p = 0; p < k; ++p) {
    for (Index q = p; q < k; ++q) {
      double acc = 0.0;
      for (Index i = 0; i < a.rows(); ++i)
        acc += a(i, support[p]) * a(i, support[q]);
      gram(p, q) = acc;
      gram(q, p) = acc;
    }
  }
  const Vector ev = symmetric_eigenvalues(gram);
  return std::max(ev.front() - 1.0, 1.0 - ev.back());
}

namespace {

void check_order(const Matrix& a, Index s) {
  if (s < 1 || s > a.cols())
    throw std::invalid_argument("rip: need 1 <= s <= number of columns");
}

}  // namespace

RipEstimate ric_exact(const Matrix& a, Index s, std::uint64_t cap) {
  check_order(a, s);
  const Index n = a.cols();
  const std::uint64_t count = binomial_count(n, s);
  if (count > cap) {
    throw EnumerationCapError(fmt::format(
        "ric_exact: C({}, {}) = {} supports exceeds the cap {}; use "
        "monte-carlo mode",
        n, s, count, cap));
  }
  RipEstimate est{s, 0.0, RipMode::Exact, 0};
  IndexSet support(s);
  for (Index k = 0; k < s; ++k) support[k] = k;
  while (true) {
    est.value = std::max(est.value, support_distortion(a, support));
    ++est.supports_checked;
    // Next subset in lexicographic order.
    Index k = s;
    while (k > 0 && support[k - 1] == n - s + (k - 1)) --k;
    if (k == 0) break;
    ++support[k - 1];
    for (Index j = k; j < s; ++j) support[j] = support[j - 1] + 1;
  }
  return est;
}

RipEstimate ric_monte_carlo(const Matrix& a, Index s, std::uint64_t trials,
                            RngStream& rng) {
  check_order(a, s);
  if (trials < 1) throw std::invalid_argument("ric_monte_carlo: trials >= 1");
  const Index n = a.cols();
  RipEstimate est{s, 0.0, RipMode::MonteCarlo, 0};
  IndexSet perm(n);
  for (std::uint64_t t = 0; t < trials; ++t) {
    for (Index i = 0; i < n; ++i) perm[i] = i;
    for (Index i = 0; i < s; ++i) {
      const Index j = i + static_cast<Index>(rng.uniform_index(n - i));
      std::swap(perm[i], perm[j]);
    }
    IndexSet support(perm.begin(), perm.begin() + static_cast<long>(s));
    std::sort(support.begin(), support.end());
    est.value = std::max(est.value, support_distortion(a, support));
    ++est.supports_checked;
  }
  return est;
}

Matrix projected_matrix(const Matrix& phi, int r, Index ell) {
  Matrix p = matmul(projected_basis(phi.rows(), r, ell), phi);
  p *= 1.0 / std::sqrt(static_cast<double>(ell));
  return p;
}

SmallBallSummary small_ball_probe(const Ensemble& ensemble, Index m, int r,
                                  Index ell, std::uint64_t trials,
                                  RngStream& rng) {
  if (trials < 1) throw std::invalid_argument("small_ball_probe: trials >= 1");
  const Matrix w = projected_basis(m, r, ell);
  const Matrix cols = sample_matrix(ensemble, m, trials, rng);
  const Matrix proj = matmul(w, cols);

  Vector sq(trials, 0.0);
  for (Index i = 0; i < proj.rows(); ++i) {
    auto row = proj.row(i);
    for (Index j = 0; j < trials; ++j) sq[j] += row[j] * row[j];
  }
  SmallBallSummary out;
  out.trials = trials;
  double sum = 0.0;
  for (double v : sq) sum += v;
  out.mean = sum / static_cast<double>(trials);
  std::sort(sq.begin(), sq.end());
  out.min = sq.front();
  out.max = sq.back();
  for (double p : {0.01, 0.05, 0.1, 0.25, 0.5, 0.75, 0.9, 0.95, 0.99}) {
    // Nearest-rank quantile.
    const auto rank = static_cast<Index>(
        std::ceil(p * static_cast<double>(trials)));
    out.quantiles.emplace_back(p, sq[std::clamp<Index>(rank, 1, trials) - 1]);
  }
  return out;
}

}  // namespace sdq
