#include "sdq/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace sdq {
namespace {

// Column-major working copy: `count` columns of length `len`.
struct Columns {
  Index len = 0;
  Index count = 0;
  std::vector<double> data;

  double* col(Index j) { return data.data() + j * len; }
  const double* col(Index j) const { return data.data() + j * len; }
};

Columns to_columns(const Matrix& a, bool transposed) {
  Columns c;
  c.len = transposed ? a.cols() : a.rows();
  c.count = transposed ? a.rows() : a.cols();
  c.data.resize(c.len * c.count);
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      if (transposed) {
        c.data[i * c.len + j] = a(i, j);
      } else {
        c.data[j * c.len + i] = a(i, j);
      }
    }
  }
  return c;
}

void rotate(double* x, double* y, Index len, double c, double s) {
  for (Index k = 0; k < len; ++k) {
    const double xk = x[k];
    const double yk = y[k];
    x[k] = c * xk - s * yk;
    y[k] = s * xk + c * yk;
  }
}

// Orthogonalizes the columns of `w` in place; accumulates rotations in `v`
// when non-null.
void hestenes(Columns& w, Columns* v, const JacobiOptions& opts) {
  const Index n = w.count;
  double worst = 0.0;
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    bool rotated = false;
    worst = 0.0;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        double* ap = w.col(p);
        double* aq = w.col(q);
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (Index k = 0; k < w.len; ++k) {
          alpha += ap[k] * ap[k];
          beta += aq[k] * aq[k];
          gamma += ap[k] * aq[k];
        }
        if (alpha == 0.0 || beta == 0.0 || gamma == 0.0) continue;
        const double rel = std::abs(gamma) / std::sqrt(alpha * beta);
        worst = std::max(worst, rel);
        if (rel <= opts.tolerance) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = std::copysign(1.0, zeta) /
                         (std::abs(zeta) + std::hypot(1.0, zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        rotate(ap, aq, w.len, c, s);
        if (v) rotate(v->col(p), v->col(q), v->len, c, s);
      }
    }
    if (!rotated) return;
  }
  throw ConvergenceError(
      fmt::format("jacobi: no convergence after {} sweeps (max relative "
                  "off-diagonal {:.3e})",
                  opts.max_sweeps, worst),
      worst);
}

// Fills zero columns of `u` (len × count, column-major) with unit vectors
// orthogonal to all others.
void complete_orthonormal(Columns& u, const std::vector<bool>& filled) {
  std::vector<bool> done = filled;
  Index next_basis = 0;
  for (Index j = 0; j < u.count; ++j) {
    if (done[j]) continue;
    for (; next_basis < u.len; ++next_basis) {
      std::vector<double> cand(u.len, 0.0);
      cand[next_basis] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (Index k = 0; k < u.count; ++k) {
          if (!done[k]) continue;
          const double* uk = u.col(k);
          double proj = 0.0;
          for (Index i = 0; i < u.len; ++i) proj += uk[i] * cand[i];
          for (Index i = 0; i < u.len; ++i) cand[i] -= proj * uk[i];
        }
      }
      const double nrm = norm2(cand);
      if (nrm > 0.5) {
        double* uj = u.col(j);
        for (Index i = 0; i < u.len; ++i) uj[i] = cand[i] / nrm;
        done[j] = true;
        ++next_basis;
        break;
      }
    }
  }
}

void check_input(const Matrix& a, const char* what) {
  if (a.rows() == 0 || a.cols() == 0)
    throw DimensionError(fmt::format("{}: empty matrix", what));
  if (!a.all_finite())
    throw NonFiniteError(fmt::format("{}: non-finite entry", what));
}

}  // namespace

SvdFactors svd(const Matrix& a, const JacobiOptions& opts) {
  check_input(a, "svd");
  const bool transposed = a.rows() < a.cols();
  Columns w = to_columns(a, transposed);
  const Index n = w.count;

  Columns v;
  v.len = n;
  v.count = n;
  v.data.assign(n * n, 0.0);
  for (Index j = 0; j < n; ++j) v.col(j)[j] = 1.0;

  hestenes(w, &v, opts);

  Vector norms(n);
  for (Index j = 0; j < n; ++j) norms[j] = norm2({w.col(j), w.len});
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index x, Index y) { return norms[x] > norms[y]; });

  Columns u;
  u.len = w.len;
  u.count = n;
  u.data.assign(w.len * n, 0.0);
  std::vector<bool> filled(n, false);
  SvdFactors f;
  f.S.resize(n);
  Matrix vm(n, n);
  for (Index k = 0; k < n; ++k) {
    const Index src = order[k];
    f.S[k] = norms[src];
    if (norms[src] > 0.0) {
      const double* ws = w.col(src);
      double* uk = u.col(k);
      for (Index i = 0; i < w.len; ++i) uk[i] = ws[i] / norms[src];
      filled[k] = true;
    }
    const double* vs = v.col(src);
    for (Index i = 0; i < n; ++i) vm(i, k) = vs[i];
  }
  complete_orthonormal(u, filled);

  Matrix um(u.len, n);
  for (Index k = 0; k < n; ++k)
    for (Index i = 0; i < u.len; ++i) um(i, k) = u.col(k)[i];

  if (transposed) {
    f.U = std::move(vm);
    f.V = std::move(um);
  } else {
    f.U = std::move(um);
    f.V = std::move(vm);
  }
  return f;
}

Vector singular_values(const Matrix& a, const JacobiOptions& opts) {
  check_input(a, "singular_values");
  Columns w = to_columns(a, a.rows() < a.cols());
  hestenes(w, nullptr, opts);
  Vector s(w.count);
  for (Index j = 0; j < w.count; ++j) s[j] = norm2({w.col(j), w.len});
  std::sort(s.begin(), s.end(), std::greater<>());
  return s;
}

Vector symmetric_eigenvalues(const Matrix& a, const JacobiOptions& opts) {
  check_input(a, "symmetric_eigenvalues");
  if (a.rows() != a.cols())
    throw DimensionError("symmetric_eigenvalues: matrix not square");
  const Index n = a.rows();
  Matrix m = a;
  auto off_norm = [&] {
    double off = 0.0;
    for (Index i = 0; i < n; ++i)
      for (Index j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
    return std::sqrt(off);
  };
  const double scale = std::max(m.max_abs(), 1e-300);
  int sweep = 0;
  for (; sweep < opts.max_sweeps; ++sweep) {
    if (off_norm() <= opts.tolerance * scale) break;
    for (Index p = 0; p + 1 < n; ++p) {
      for (Index q = p + 1; q < n; ++q) {
        const double apq = m(p, q);
        if (apq == 0.0) continue;
        const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) /
                         (std::abs(theta) + std::hypot(1.0, theta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        for (Index k = 0; k < n; ++k) {
          const double mkp = m(k, p);
          const double mkq = m(k, q);
          m(k, p) = c * mkp - s * mkq;
          m(k, q) = s * mkp + c * mkq;
        }
        for (Index k = 0; k < n; ++k) {
          const double mpk = m(p, k);
          const double mqk = m(q, k);
          m(p, k) = c * mpk - s * mqk;
          m(q, k) = s * mpk + c * mqk;
        }
      }
    }
  }
  if (sweep == opts.max_sweeps && off_norm() > opts.tolerance * scale) {
    throw ConvergenceError("symmetric_eigenvalues: no convergence",
                           off_norm() / scale);
  }
  Vector ev(n);
  for (Index i = 0; i < n; ++i) ev[i] = m(i, i);
  std::sort(ev.begin(), ev.end(), std::greater<>());
  return ev;
}

Matrix pseudoinverse(const Matrix& a, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0))
    throw std::invalid_argument("pseudoinverse: rel_tol must lie in (0, 1)");
  const SvdFactors f = svd(a);
  const double cutoff = rel_tol * f.S.front();
  Matrix p(a.cols(), a.rows());
  for (Index k = 0; k < f.S.size(); ++k) {
    if (f.S[k] <= cutoff || f.S[k] == 0.0) continue;
    const double inv = 1.0 / f.S[k];
    for (Index i = 0; i < a.cols(); ++i) {
      const double vik = f.V(i, k) * inv;
      if (vik == 0.0) continue;
      auto prow = p.row(i);
      for (Index j = 0; j < a.rows(); ++j) prow[j] += vik * f.U(j, k);
    }
  }
  return p;
}

double sigma_j(const Matrix& a, Index j) {
  const Index k = std::min(a.rows(), a.cols());
  if (j < 1 || j > k) {
    throw std::out_of_range(
        fmt::format("sigma_j: index {} outside [1, {}]", j, k));
  }
  return singular_values(a)[j - 1];
}

double sigma_min(const Matrix& a) { return singular_values(a).back(); }

double operator_norm(const Matrix& a) { return singular_values(a).front(); }

Vector least_squares(const Matrix& a, std::span<const double> b,
                     double rel_tol) {
  if (a.rows() != b.size())
    throw DimensionError("least_squares: rhs length mismatch");
  return matvec(pseudoinverse(a, rel_tol), b);
}

}  // namespace sdq
