#include "sdq/difference.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <mutex>
#include <utility>

namespace sdq {
namespace {

void check_order(int r) {
  if (r < 1) throw std::invalid_argument("difference order r must be >= 1");
}

double binomial(Index n, Index k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double b = 1.0;
  for (Index i = 1; i <= k; ++i) {
    b = b * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(b);
}

}  // namespace

Matrix build_D(Index m) {
  if (m < 1) throw DimensionError("build_D: m must be >= 1");
  Matrix d(m, m);
  for (Index i = 0; i < m; ++i) {
    d(i, i) = 1.0;
    if (i > 0) d(i, i - 1) = -1.0;
  }
  return d;
}

Matrix inverse_power(Index m, int r) {
  if (m < 1) throw DimensionError("inverse_power: m must be >= 1");
  check_order(r);
  const Index k = static_cast<Index>(r - 1);
  // Entries depend on i - j only.
  Vector band(m);
  for (Index d = 0; d < m; ++d) band[d] = binomial(d + k, k);
  Matrix a(m, m);
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j <= i; ++j) a(i, j) = band[i - j];
  return a;
}

Matrix difference_power_matrix(Index m, int r) {
  check_order(r);
  const Matrix d = build_D(m);
  Matrix p = d;
  for (int k = 1; k < r; ++k) p = matmul(p, d);
  return p;
}

std::shared_ptr<const DifferencePower> difference_power(Index m, int r) {
  using Entry = std::shared_future<std::shared_ptr<const DifferencePower>>;
  static std::mutex mutex;
  static std::map<std::pair<Index, int>, Entry> cache;

  if (m < 1) throw DimensionError("difference_power: m must be >= 1");
  check_order(r);

  std::promise<std::shared_ptr<const DifferencePower>> promise;
  Entry entry;
  bool owner = false;
  {
    std::lock_guard lock(mutex);
    auto it = cache.find({m, r});
    if (it != cache.end()) {
      entry = it->second;
    } else {
      entry = promise.get_future().share();
      cache.emplace(std::pair{m, r}, entry);
      owner = true;
    }
  }
  if (owner) {
    try {
      auto dp = std::make_shared<DifferencePower>();
      dp->m = m;
      dp->r = r;
      dp->inv_power = inverse_power(m, r);
      dp->factors = svd(dp->inv_power);
      promise.set_value(std::move(dp));
    } catch (...) {
      {
        std::lock_guard lock(mutex);
        cache.erase({m, r});
      }
      promise.set_exception(std::current_exception());
    }
  }
  return entry.get();
}

Vector singular_profile(Index m, int r) {
  return difference_power(m, r)->factors.S;
}

Matrix projected_basis(Index m, int r, Index ell) {
  if (ell < 1 || ell > m)
    throw DimensionError("projected_basis: ell must lie in [1, m]");
  const Matrix& v = difference_power(m, r)->factors.V;
  Matrix w(ell, m);
  for (Index k = 0; k < ell; ++k)
    for (Index i = 0; i < m; ++i) w(k, i) = v(i, k);
  return w;
}

Vector apply_inverse_power(std::span<const double> v, int r) {
  check_order(r);
  Vector out(v.begin(), v.end());
  for (int k = 0; k < r; ++k)
    for (Index i = 1; i < out.size(); ++i) out[i] += out[i - 1];
  return out;
}

Matrix apply_inverse_power(const Matrix& a, int r) {
  check_order(r);
  Matrix out = a;
  for (int k = 0; k < r; ++k) {
    for (Index i = 1; i < out.rows(); ++i) {
      auto prev = out.row(i - 1);
      auto cur = out.row(i);
      for (Index j = 0; j < cur.size(); ++j) cur[j] += prev[j];
    }
  }
  return out;
}

Vector apply_power(std::span<const double> v, int r) {
  check_order(r);
  Vector out(v.begin(), v.end());
  for (int k = 0; k < r; ++k)
    for (Index i = out.size(); i-- > 1;) out[i] -= out[i - 1];
  return out;
}

}  // namespace sdq
