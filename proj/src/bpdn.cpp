#include "sdq/bpdn.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace sdq {
namespace {

// In-place Cholesky of a symmetric positive definite matrix (lower factor).
bool cholesky(Matrix& g) {
  const Index n = g.rows();
  for (Index j = 0; j < n; ++j) {
    double d = g(j, j);
    for (Index k = 0; k < j; ++k) d -= g(j, k) * g(j, k);
    if (!(d > 0.0)) return false;
    d = std::sqrt(d);
    g(j, j) = d;
    for (Index i = j + 1; i < n; ++i) {
      double s = g(i, j);
      for (Index k = 0; k < j; ++k) s -= g(i, k) * g(j, k);
      g(i, j) = s / d;
    }
  }
  return true;
}

Vector cholesky_solve(const Matrix& l, Vector b) {
  const Index n = l.rows();
  for (Index i = 0; i < n; ++i) {
    for (Index k = 0; k < i; ++k) b[i] -= l(i, k) * b[k];
    b[i] /= l(i, i);
  }
  for (Index i = n; i-- > 0;) {
    for (Index k = i + 1; k < n; ++k) b[i] -= l(k, i) * b[k];
    b[i] /= l(i, i);
  }
  return b;
}

// Tries to turn the sign pattern of `x` into an exact minimizer. On the
// support S with signs σ the KKT system gives
//   z = G⁻¹(Φ_Sᵀq − tσ),  G = Φ_SᵀΦ_S,
// with t ≥ 0 fixed by ‖q − Φ_S z‖₂ = ε; the certificate holds when
// sign(z) = σ and |Φ_jᵀ(q − Φz)| ≤ t off S.
std::optional<Vector> polish(const Matrix& phi, std::span<const double> q,
                             double eps, std::span<const double> x) {
  const double xmax = norm_inf(x);
  if (xmax == 0.0) return std::nullopt;
  IndexSet support;
  for (Index i = 0; i < x.size(); ++i)
    if (std::abs(x[i]) > 1e-7 * xmax) support.push_back(i);
  if (support.size() > phi.rows()) return std::nullopt;

  const Matrix phi_s = phi.select_columns(support);
  Matrix l = matmul_tn(phi_s, phi_s);
  if (!cholesky(l)) return std::nullopt;

  Vector sign(support.size());
  for (Index k = 0; k < support.size(); ++k)
    sign[k] = x[support[k]] > 0.0 ? 1.0 : -1.0;

  const Vector z0 = cholesky_solve(l, matvec_t(phi_s, q));
  const Vector w = cholesky_solve(l, sign);
  const Vector resid0 = subtract(q, matvec(phi_s, z0));
  const Vector phi_w = matvec(phi_s, w);
  const double rho0 = norm2(resid0);
  const double a = dot(sign, w);
  if (!(a > 0.0)) return std::nullopt;

  const double slack = eps * eps - rho0 * rho0;
  const double qnorm = std::max(1.0, norm2(q));
  if (slack < -1e-12 * qnorm * qnorm) return std::nullopt;
  const double t = std::sqrt(std::max(slack, 0.0) / a);

  Vector z(support.size());
  for (Index k = 0; k < z.size(); ++k) {
    z[k] = z0[k] - t * w[k];
    if (z[k] * sign[k] <= 0.0) return std::nullopt;
  }

  // Dual vector λ with Φ_Sᵀλ = σ.
  Vector lambda(phi.rows());
  if (t > 0.0) {
    for (Index i = 0; i < lambda.size(); ++i)
      lambda[i] = resid0[i] / t + phi_w[i];
  } else {
    if (rho0 > 1e-10 * qnorm) return std::nullopt;
    lambda = phi_w;
  }
  const Vector corr = matvec_t(phi, lambda);
  std::vector<bool> in_support(x.size(), false);
  for (Index k : support) in_support[k] = true;
  for (Index j = 0; j < corr.size(); ++j) {
    if (!in_support[j] && std::abs(corr[j]) > 1.0 + 1e-9) return std::nullopt;
  }

  Vector out(x.size(), 0.0);
  for (Index k = 0; k < support.size(); ++k) out[support[k]] = z[k];
  return out;
}

Vector soft_threshold(Vector v, double tau) {
  for (double& x : v) {
    const double a = std::abs(x) - tau;
    x = a > 0.0 ? std::copysign(a, x) : 0.0;
  }
  return v;
}

BpdnResult finish(const Matrix& phi, std::span<const double> q, Vector x,
                  int iters, bool converged, bool certified) {
  BpdnResult res;
  res.residual_norm = norm2(subtract(matvec(phi, x), q));
  res.objective = norm1(x);
  res.x = std::move(x);
  res.iterations = iters;
  res.converged = converged;
  res.certified = certified;
  return res;
}

}  // namespace

void BpdnConfig::validate() const {
  if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
    throw std::invalid_argument("bpdn: epsilon must be finite and >= 0");
  if (max_iters < 1) throw std::invalid_argument("bpdn: max_iters must be >= 1");
  if (!(primal_tol > 0.0) || !(dual_tol > 0.0))
    throw std::invalid_argument("bpdn: tolerances must be positive");
  if (polish_every < 1)
    throw std::invalid_argument("bpdn: polish_every must be >= 1");
}

double estimate_operator_norm(const Matrix& phi, int iters) {
  Vector v(phi.cols());
  for (Index j = 0; j < v.size(); ++j)
    v[j] = 1.0 + 0.5 * std::sin(static_cast<double>(j + 1));
  double est = 0.0;
  for (int k = 0; k < iters; ++k) {
    const double nv = norm2(v);
    if (nv == 0.0) return 0.0;
    for (double& x : v) x /= nv;
    Vector w = matvec_t(phi, matvec(phi, v));
    const double next = std::sqrt(norm2(w));
    v = std::move(w);
    if (k > 5 && std::abs(next - est) <= 1e-10 * next) {
      est = next;
      break;
    }
    est = next;
  }
  return est;
}

BpdnResult bpdn_solve(const Matrix& phi, std::span<const double> q,
                      const BpdnConfig& cfg) {
  cfg.validate();
  if (phi.rows() != q.size())
    throw DimensionError("bpdn_solve: phi rows must equal length of q");
  require_finite(q, "bpdn_solve");
  const Index n = phi.cols();
  const double eps = cfg.epsilon;

  if (norm2(q) <= eps) return finish(phi, q, Vector(n, 0.0), 0, true, true);

  const double lip = 1.01 * estimate_operator_norm(phi);
  if (lip == 0.0) {
    throw std::invalid_argument("bpdn_solve: zero matrix with q outside ball");
  }
  const double tau = 0.99 / lip;
  const double sigma = 0.99 / lip;

  Vector x(n, 0.0);
  Vector xbar(n, 0.0);
  Vector y(q.size(), 0.0);
  int it = 0;
  for (it = 1; it <= cfg.max_iters; ++it) {
    // Dual step: prox of σF*, F the indicator of the ball B(q, ε).
    const Vector ax = matvec(phi, xbar);
    Vector p(q.size());
    for (Index i = 0; i < p.size(); ++i) p[i] = y[i] / sigma + ax[i];
    Vector d = subtract(p, q);
    const double dn = norm2(d);
    if (dn > eps) {
      const double scale = eps / dn;
      for (Index i = 0; i < d.size(); ++i) d[i] = q[i] + scale * d[i];
    } else {
      d = p;
    }
    for (Index i = 0; i < y.size(); ++i) y[i] = sigma * (p[i] - d[i]);

    // Primal step.
    const Vector aty = matvec_t(phi, y);
    Vector v(n);
    for (Index j = 0; j < n; ++j) v[j] = x[j] - tau * aty[j];
    Vector x_new = soft_threshold(std::move(v), tau);

    double change = 0.0;
    for (Index j = 0; j < n; ++j) {
      xbar[j] = 2.0 * x_new[j] - x[j];
      change = std::max(change, std::abs(x_new[j] - x[j]));
    }
    x = std::move(x_new);

    if (it % cfg.polish_every == 0) {
      if (auto exact = polish(phi, q, eps, x)) {
        return finish(phi, q, std::move(*exact), it, true, true);
      }
    }
    if (change <= cfg.primal_tol * std::max(1.0, norm_inf(x))) {
      const double viol = norm2(subtract(matvec(phi, x), q)) - eps;
      if (viol <= cfg.dual_tol * std::max(1.0, eps)) {
        if (auto exact = polish(phi, q, eps, x)) {
          return finish(phi, q, std::move(*exact), it, true, true);
        }
        return finish(phi, q, std::move(x), it, true, false);
      }
    }
  }
  if (auto exact = polish(phi, q, eps, x)) {
    return finish(phi, q, std::move(*exact), cfg.max_iters, true, true);
  }
  return finish(phi, q, std::move(x), cfg.max_iters, false, false);
}

}  // namespace sdq
