#include "sdq/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>

#include "sdq/difference.hpp"
#include "sdq/linalg.hpp"

namespace sdq {
namespace {

constexpr double kRankTol = 1e-12;

// (D^{-r})ᵀ·v: r reversed running sums.
Vector apply_inverse_power_t(std::span<const double> v, int r) {
  Vector out(v.begin(), v.end());
  for (int k = 0; k < r; ++k)
    for (Index i = out.size(); i-- > 1;) out[i - 1] += out[i];
  return out;
}

void check_rank(const Vector& s, const char* what) {
  if (s.empty() || !(s.back() > kRankTol * s.front())) {
    throw RankDeficientError(
        fmt::format("{}: D^-r Phi_T is rank deficient (sigma_min {:.3e})",
                    what, s.empty() ? 0.0 : s.back()));
  }
}

// Pseudoinverse of a full-column-rank matrix, with the left-inverse identity
// checked.
Matrix checked_left_inverse(const Matrix& b, const char* what) {
  if (b.cols() > b.rows()) {
    throw RankDeficientError(
        fmt::format("{}: support larger than measurement count", what));
  }
  const SvdFactors f = svd(b);
  check_rank(f.S, what);
  Matrix p(b.cols(), b.rows());
  for (Index k = 0; k < f.S.size(); ++k) {
    const double inv = 1.0 / f.S[k];
    for (Index i = 0; i < b.cols(); ++i) {
      const double vik = f.V(i, k) * inv;
      auto prow = p.row(i);
      for (Index j = 0; j < b.rows(); ++j) prow[j] += vik * f.U(j, k);
    }
  }
  const double defect =
      max_abs_diff(matmul(p, b), Matrix::identity(b.cols()));
  if (defect > 1e-8) {
    throw RankDeficientError(fmt::format(
        "{}: left-inverse defect {:.3e} exceeds 1e-8", what, defect));
  }
  return p;
}

}  // namespace

IndexSet support_from(std::span<const double> x_prime, Index s) {
  if (s < 1 || s > x_prime.size())
    throw std::invalid_argument("support_from: need 1 <= s <= length");
  IndexSet order(x_prime.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return std::abs(x_prime[a]) > std::abs(x_prime[b]);
  });
  order.resize(s);
  std::sort(order.begin(), order.end());
  return order;
}

Matrix sobolev_dual(const Matrix& phi_t, int r) {
  const Matrix pinv =
      checked_left_inverse(apply_inverse_power(phi_t, r), "sobolev_dual");
  Matrix l(pinv.rows(), pinv.cols());
  for (Index k = 0; k < pinv.rows(); ++k) {
    const Vector row = apply_inverse_power_t(pinv.row(k), r);
    std::copy(row.begin(), row.end(), l.row(k).begin());
  }
  return l;
}

Vector sobolev_reconstruct(const Matrix& phi, std::span<const Index> support,
                           std::span<const double> q, int r) {
  if (phi.rows() != q.size())
    throw DimensionError("sobolev_reconstruct: phi rows must equal length of q");
  if (support.empty() || support.size() > phi.rows())
    throw DimensionError("sobolev_reconstruct: need 1 <= |T| <= m");
  const Matrix b = apply_inverse_power(phi.select_columns(support), r);
  const Matrix pinv = checked_left_inverse(b, "sobolev_reconstruct");
  const Vector xt = matvec(pinv, apply_inverse_power(q, r));
  Vector x(phi.cols(), 0.0);
  for (Index k = 0; k < support.size(); ++k) x[support[k]] = xt[k];
  return x;
}

double error_bound_eq3(const Matrix& phi_t, int r, double delta) {
  const Vector s = singular_values(apply_inverse_power(phi_t, r));
  check_rank(s, "error_bound_eq3");
  return delta * std::sqrt(static_cast<double>(phi_t.rows())) /
         (2.0 * s.back());
}

Index projection_ell(Index m, Index s, double alpha) {
  if (m < 1 || s < 1) throw std::invalid_argument("projection_ell: m, s >= 1");
  const double md = static_cast<double>(m);
  const double raw = md * std::pow(static_cast<double>(s) / md, alpha);
  // Guard against ⌈8.000000000001⌉ = 9 from rounding in pow.
  const double ell = std::ceil(raw * (1.0 - 1e-12));
  return static_cast<Index>(std::clamp(ell, 1.0, md));
}

void PipelineConfig::validate() const {
  if (n < 1 || s < 1 || s > n)
    throw std::invalid_argument("pipeline: need 1 <= s <= n");
  if (m < s) throw std::invalid_argument("pipeline: need m >= s");
  QuantizerConfig{r, delta}.validate();
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw std::invalid_argument("pipeline: alpha must lie in (0, 1]");
  if (!(k_floor > 0.0)) throw std::invalid_argument("pipeline: K must be > 0");
  if (!(magnitude_ratio >= 1.0))
    throw std::invalid_argument("pipeline: magnitude ratio must be >= 1");
  if (epsilon && !(*epsilon >= 0.0))
    throw std::invalid_argument("pipeline: epsilon must be >= 0");
}

RecoveryReport full_pipeline(const PipelineConfig& cfg, RngStream rng) {
  cfg.validate();
  RngStream matrix_rng = rng.substream("matrix");
  RngStream signal_rng = rng.substream("signal");

  const Matrix phi = sample_matrix(cfg.ensemble, cfg.m, cfg.n, matrix_rng);
  const double floor = amplitude_floor(cfg.k_floor, cfg.r, cfg.delta);
  const SparseSignal signal = sample_sparse_signal(
      cfg.n, cfg.s, floor, cfg.magnitude_ratio * floor, signal_rng);
  const Vector x = signal.dense();
  const Vector y = matvec(phi, x);

  const bool sigma_delta = cfg.quantizer == QuantizerKind::SigmaDelta;
  const QuantizerConfig qcfg{cfg.r, cfg.delta};
  const Vector q = sigma_delta ? sigma_delta_quantize(y, qcfg).q
                               : msq_quantize(y, cfg.delta);

  RecoveryReport rep;
  rep.true_support = signal.support;
  rep.epsilon = cfg.epsilon.value_or(
      sigma_delta ? quantization_noise_bound(cfg.m, qcfg)
                  : 0.5 * cfg.delta * std::sqrt(static_cast<double>(cfg.m)));

  BpdnConfig bcfg = cfg.bpdn;
  bcfg.epsilon = rep.epsilon;
  const BpdnResult coarse = bpdn_solve(phi, q, bcfg);
  rep.bpdn_converged = coarse.converged;
  rep.bpdn_certified = coarse.certified;

  rep.recovered_support = support_from(coarse.x, cfg.s);
  rep.support_correct = rep.recovered_support == rep.true_support;
  if (cfg.s < cfg.n) {
    Vector mags(coarse.x.size());
    std::transform(coarse.x.begin(), coarse.x.end(), mags.begin(),
                   [](double v) { return std::abs(v); });
    std::nth_element(mags.begin(), mags.begin() + static_cast<long>(cfg.s),
                     mags.end(), std::greater<>());
    const double next = mags[cfg.s];
    const double kth = *std::min_element(
        mags.begin(), mags.begin() + static_cast<long>(cfg.s));
    rep.support_tie = kth - next <= 1e-9;
  }

  const Matrix phi_t = phi.select_columns(rep.recovered_support);
  try {
    if (sigma_delta) {
      rep.x_hat = sobolev_reconstruct(phi, rep.recovered_support, q, cfg.r);
      rep.bound_eq3 = error_bound_eq3(phi_t, cfg.r, cfg.delta);
    } else {
      const SvdFactors f = svd(phi_t);
      check_rank(f.S, "msq reconstruction");
      const Vector xt = least_squares(phi_t, q);
      rep.x_hat.assign(cfg.n, 0.0);
      for (Index k = 0; k < xt.size(); ++k)
        rep.x_hat[rep.recovered_support[k]] = xt[k];
      rep.bound_eq3 = cfg.delta * std::sqrt(static_cast<double>(cfg.m)) /
                      (2.0 * f.S.back());
    }
  } catch (const RankDeficientError&) {
    rep.degenerate = true;
    rep.x_hat.assign(cfg.n, 0.0);
    rep.bound_eq3 = std::numeric_limits<double>::infinity();
  }
  rep.err_l2 = norm2(subtract(x, rep.x_hat));

  rep.ell = projection_ell(cfg.m, cfg.s, cfg.alpha);
  if (rep.ell >= cfg.s) {
    Matrix proj = matmul(projected_basis(cfg.m, cfg.r, rep.ell), phi_t);
    proj *= 1.0 / std::sqrt(static_cast<double>(rep.ell));
    rep.sigma_min_proj = sigma_min(proj);
  }
  return rep;
}

}  // namespace sdq
