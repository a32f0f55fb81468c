#include "sdq/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>

#include <fmt/format.h>

namespace sdq {

void SweepConfig::validate() const {
  if (m_grid.empty()) throw std::invalid_argument("sweep: m_grid is empty");
  for (Index k = 0; k < m_grid.size(); ++k) {
    if (m_grid[k] < s)
      throw std::invalid_argument("sweep: every m must be >= s");
    if (k > 0 && m_grid[k] <= m_grid[k - 1])
      throw std::invalid_argument("sweep: m_grid must be strictly increasing");
  }
  if (trials < 1) throw std::invalid_argument("sweep: trials must be >= 1");
  pipeline(m_grid.front()).validate();
}

PipelineConfig SweepConfig::pipeline(Index m) const {
  PipelineConfig p;
  p.ensemble = ensemble;
  p.n = n;
  p.s = s;
  p.m = m;
  p.r = r;
  p.delta = delta;
  p.alpha = alpha;
  p.k_floor = k_floor;
  p.quantizer = quantizer;
  return p;
}

std::uint64_t trial_seed(std::uint64_t base, Index m, Index trial) {
  return philox2x64({static_cast<std::uint64_t>(m),
                     static_cast<std::uint64_t>(trial)},
                    base ^ 0xA5A5A5A5A5A5A5A5ULL)[0];
}

std::vector<SweepRecord> run_decay_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const Index total = cfg.m_grid.size() * cfg.trials;
  std::vector<SweepRecord> records(total);

  auto run_one = [&](Index idx) {
    const Index m = cfg.m_grid[idx / cfg.trials];
    const Index trial = idx % cfg.trials;
    const PipelineConfig pc = cfg.pipeline(m);
    SweepRecord& rec = records[idx];
    rec.ensemble = to_string(cfg.ensemble.kind);
    rec.n = cfg.n;
    rec.s = cfg.s;
    rec.m = m;
    rec.r = cfg.r;
    rec.delta = cfg.delta;
    rec.alpha = cfg.alpha;
    rec.ell = projection_ell(m, cfg.s, cfg.alpha);
    rec.trial = trial;
    rec.seed = trial_seed(cfg.seed, m, trial);
    try {
      const RecoveryReport rep = full_pipeline(pc, RngStream(rec.seed));
      rec.support_correct = rep.support_correct && !rep.degenerate;
      rec.err_l2 = rep.err_l2;
      rec.bound_eq3 = rep.bound_eq3;
      rec.sigma_min_proj = rep.sigma_min_proj;
    } catch (const std::exception&) {
      rec.support_correct = false;
      rec.err_l2 = std::numeric_limits<double>::infinity();
      rec.bound_eq3 = std::numeric_limits<double>::infinity();
      rec.sigma_min_proj = 0.0;
    }
  };

  unsigned workers = cfg.threads ? cfg.threads
                                 : std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<Index>(workers, total));
  if (workers <= 1) {
    for (Index i = 0; i < total; ++i) run_one(i);
    return records;
  }
  std::atomic<Index> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (Index i = next++; i < total; i = next++) run_one(i);
    });
  }
  for (auto& t : pool) t.join();
  return records;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& recs) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : recs) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                       r.ensemble, r.n, r.s, r.m, r.r, r.delta, r.alpha, r.ell,
                       r.trial, r.seed, r.support_correct ? 1 : 0, r.err_l2,
                       r.bound_eq3, r.sigma_min_proj);
  }
}

std::vector<SweepRecord> read_sweep_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSweepCsvHeader)
    throw std::runtime_error("sweep csv: unexpected header");
  std::vector<SweepRecord> recs;
  Index lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) f.push_back(cell);
    if (f.size() != 14)
      throw std::runtime_error(
          fmt::format("sweep csv line {}: expected 14 fields", lineno));
    try {
      SweepRecord r;
      r.ensemble = f[0];
      r.n = std::stoull(f[1]);
      r.s = std::stoull(f[2]);
      r.m = std::stoull(f[3]);
      r.r = std::stoi(f[4]);
      r.delta = std::stod(f[5]);
      r.alpha = std::stod(f[6]);
      r.ell = std::stoull(f[7]);
      r.trial = std::stoull(f[8]);
      r.seed = std::stoull(f[9]);
      r.support_correct = f[10] == "1";
      r.err_l2 = std::stod(f[11]);
      r.bound_eq3 = std::stod(f[12]);
      r.sigma_min_proj = std::stod(f[13]);
      recs.push_back(std::move(r));
    } catch (const std::logic_error&) {
      throw std::runtime_error(
          fmt::format("sweep csv line {}: malformed number", lineno));
    }
  }
  return recs;
}

double fit_loglog_slope(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2)
    throw std::invalid_argument("fit_loglog_slope: need at least 2 points");
  double sx = 0.0, sy = 0.0;
  for (const auto& [lambda, err] : points) {
    if (!(lambda > 0.0) || !(err > 0.0))
      throw std::invalid_argument("fit_loglog_slope: values must be > 0");
    sx += std::log(lambda);
    sy += std::log(err);
  }
  const double k = static_cast<double>(points.size());
  const double mx = sx / k;
  const double my = sy / k;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [lambda, err] : points) {
    const double dx = std::log(lambda) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(err) - my);
  }
  if (sxx == 0.0)
    throw std::invalid_argument("fit_loglog_slope: all lambda values equal");
  return sxy / sxx;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile: empty data");
  std::sort(values.begin(), values.end());
  const double pos = p * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<Index>(std::floor(pos));
  const Index hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

SweepSummary summarize(const std::vector<SweepRecord>& records) {
  if (records.empty()) throw std::invalid_argument("summarize: no records");
  std::map<Index, std::vector<const SweepRecord*>> by_m;
  for (const auto& r : records) by_m[r.m].push_back(&r);

  SweepSummary out;
  Index correct_total = 0;
  Index bound_ok_total = 0;
  std::vector<std::pair<double, double>> medians;
  for (const auto& [m, recs] : by_m) {
    GridSummary g;
    g.m = m;
    g.lambda = static_cast<double>(m) / static_cast<double>(recs.front()->s);
    g.trials = recs.size();
    std::vector<double> errs;
    Index bound_ok = 0;
    for (const SweepRecord* r : recs) {
      if (!r->support_correct) continue;
      ++g.correct;
      errs.push_back(r->err_l2);
      if (r->err_l2 <= r->bound_eq3) ++bound_ok;
      const double scale =
          r->delta * std::pow(static_cast<double>(r->m) /
                                  static_cast<double>(r->ell),
                              -r->r + 0.5);
      const double c = r->err_l2 / scale;
      out.empirical_constant =
          std::max(out.empirical_constant.value_or(c), c);
    }
    g.recovery_rate =
        static_cast<double>(g.correct) / static_cast<double>(g.trials);
    if (!errs.empty()) {
      g.err_q1 = quantile(errs, 0.25);
      g.err_median = quantile(errs, 0.5);
      g.err_q3 = quantile(errs, 0.75);
      g.bound_rate =
          static_cast<double>(bound_ok) / static_cast<double>(g.correct);
      if (*g.err_median > 0.0 && std::isfinite(*g.err_median))
        medians.emplace_back(g.lambda, *g.err_median);
    }
    correct_total += g.correct;
    bound_ok_total += bound_ok;
    out.grid.push_back(g);
  }
  out.recovery_rate = static_cast<double>(correct_total) /
                      static_cast<double>(records.size());
  if (correct_total > 0) {
    out.bound_rate = static_cast<double>(bound_ok_total) /
                     static_cast<double>(correct_total);
  }
  if (medians.size() >= 2) out.slope = fit_loglog_slope(medians);
  return out;
}

namespace {

std::string opt(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string{};
}

}  // namespace

void write_summary_text(std::ostream& out, const SweepSummary& s) {
  out << fmt::format("{:>8} {:>10} {:>7} {:>9} {:>13} {:>13} {:>13} {:>8}\n",
                     "m", "lambda", "trials", "recovery", "err_q1",
                     "err_median", "err_q3", "bound_ok");
  for (const auto& g : s.grid) {
    auto cell = [](const std::optional<double>& v) {
      return v ? fmt::format("{:.6e}", *v) : std::string("-");
    };
    out << fmt::format("{:>8} {:>10.4g} {:>7} {:>9.3f} {:>13} {:>13} {:>13} "
                       "{:>8}\n",
                       g.m, g.lambda, g.trials, g.recovery_rate,
                       cell(g.err_q1), cell(g.err_median), cell(g.err_q3),
                       g.bound_rate ? fmt::format("{:.3f}", *g.bound_rate)
                                    : std::string("-"));
  }
  out << fmt::format("overall recovery rate: {:.4f}\n", s.recovery_rate);
  out << "bound satisfaction rate: "
      << (s.bound_rate ? fmt::format("{:.4f}", *s.bound_rate) : "absent")
      << '\n';
  out << "median error slope vs lambda: "
      << (s.slope ? fmt::format("{:.4f}", *s.slope) : "absent") << '\n';
  out << "empirical constant C: "
      << (s.empirical_constant ? fmt::format("{:.4g}", *s.empirical_constant)
                               : "absent")
      << '\n';
}

void write_summary_csv(std::ostream& out, const SweepSummary& s) {
  out << "m,lambda,trials,support_correct,recovery_rate,err_q1,err_median,"
         "err_q3,bound_satisfied_rate\n";
  for (const auto& g : s.grid) {
    out << fmt::format("{},{},{},{},{},{},{},{},{}\n", g.m, g.lambda, g.trials,
                       g.correct, g.recovery_rate, opt(g.err_q1),
                       opt(g.err_median), opt(g.err_q3), opt(g.bound_rate));
  }
}

}  // namespace sdq
