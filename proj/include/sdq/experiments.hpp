#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>

#include "sdq/recovery.hpp"

namespace sdq {

struct SweepConfig {
  Ensemble ensemble;
  Index n = 256;
  Index s = 5;
  int r = 2;
  double delta = 0.01;
  double alpha = 0.7;
  std::vector<Index> m_grid{100, 200, 400, 800};
  Index trials = 20;
  std::uint64_t seed = 1;
  std::string output;  // empty: caller decides

  double k_floor = 1.0;
  QuantizerKind quantizer = QuantizerKind::SigmaDelta;
  unsigned threads = 0;  // 0: hardware concurrency

  void validate() const;
  PipelineConfig pipeline(Index m) const;
};

struct SweepRecord {
  std::string ensemble;
  Index n = 0;
  Index s = 0;
  Index m = 0;
  int r = 0;
  double delta = 0.0;
  double alpha = 0.0;
  Index ell = 0;
  Index trial = 0;
  std::uint64_t seed = 0;
  bool support_correct = false;
  double err_l2 = 0.0;
  double bound_eq3 = 0.0;
  double sigma_min_proj = 0.0;
};

// Seed of trial `trial` at grid point `m`; feeding it to full_pipeline
// reproduces the record.
std::uint64_t trial_seed(std::uint64_t base, Index m, Index trial);

// One record per (m, trial), ordered by m then trial regardless of thread
// scheduling. A trial that throws is recorded with support_correct = false
// and infinite error.
std::vector<SweepRecord> run_decay_sweep(const SweepConfig& cfg);

inline constexpr const char* kSweepCsvHeader =
    "ensemble,n,s,m,r,delta,alpha,ell,trial,seed,support_correct,err_l2,"
    "bound_eq3,sigma_min_proj";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRecord>& recs);
std::vector<SweepRecord> read_sweep_csv(std::istream& in);

// Least-squares slope of log(err) against log(lambda).
double fit_loglog_slope(const std::vector<std::pair<double, double>>& points);

struct GridSummary {
  Index m = 0;
  double lambda = 0.0;  // m / s
  Index trials = 0;
  Index correct = 0;
  double recovery_rate = 0.0;
  // Quartiles of err_l2 over support-correct trials.
  std::optional<double> err_q1, err_median, err_q3;
  // Fraction of support-correct trials with err_l2 <= bound_eq3.
  std::optional<double> bound_rate;
};

struct SweepSummary {
  std::vector<GridSummary> grid;
  double recovery_rate = 0.0;
  std::optional<double> bound_rate;
  // Slope of the median error against lambda; absent with < 2 grid points.
  std::optional<double> slope;
  // max err_l2 / (Δ·(m/ℓ)^{−r+1/2}) over support-correct trials.
  std::optional<double> empirical_constant;
};

SweepSummary summarize(const std::vector<SweepRecord>& records);

void write_summary_text(std::ostream& out, const SweepSummary& summary);
void write_summary_csv(std::ostream& out, const SweepSummary& summary);

// Linear-interpolation quantile of unsorted data, p in [0, 1].
double quantile(std::vector<double> values, double p);

}  // namespace sdq
