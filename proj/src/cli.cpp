#include "sdq/cli.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "sdq/rip.hpp"

namespace sdq {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename Fn>
void with_output(const std::string& path, std::ostream& fallback, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(fallback);
    return;
  }
  std::ofstream file(path);
  if (!file) throw std::runtime_error("cannot write " + path);
  fn(static_cast<std::ostream&>(file));
}

std::string join(const IndexSet& idx) {
  std::string s;
  for (Index k = 0; k < idx.size(); ++k) {
    if (k) s += ';';
    s += std::to_string(idx[k]);
  }
  return s;
}

QuantizerKind parse_quantizer(const std::string& name) {
  if (name == "sigma-delta") return QuantizerKind::SigmaDelta;
  if (name == "msq") return QuantizerKind::Msq;
  throw std::invalid_argument("unknown quantizer '" + name +
                              "' (sigma-delta|msq)");
}

std::uint64_t parse_u64(const std::string& v) {
  std::size_t used = 0;
  const auto x = std::stoull(v, &used);
  if (used != v.size()) throw std::invalid_argument("not an integer: " + v);
  return x;
}

// The library takes any r >= 1; the command line stops at 3.
int parse_order(const std::string& v) {
  const auto r = parse_u64(v);
  if (r < 1 || r > 3)
    throw std::invalid_argument("order r must be 1, 2 or 3, got " + v);
  return static_cast<int>(r);
}

double parse_real(const std::string& v) {
  std::size_t used = 0;
  const double x = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument("not a number: " + v);
  return x;
}

// gen ------------------------------------------------------------------------

struct GenArgs {
  std::string kind = "matrix";
  std::string ensemble = "gaussian";
  Index m = 100;
  Index n = 256;
  Index s = 5;
  double floor = 1.0;
  double cap = 0.0;
  std::uint64_t seed = 1;
  std::string output;
};

void run_gen(const GenArgs& a, std::ostream& out) {
  RngStream rng(a.seed);
  if (a.kind == "matrix") {
    RngStream sub = rng.substream("matrix");
    const Matrix phi = sample_matrix(parse_ensemble(a.ensemble), a.m, a.n, sub);
    with_output(a.output, out, [&](std::ostream& o) { write_matrix(o, phi); });
  } else if (a.kind == "signal") {
    RngStream sub = rng.substream("signal");
    const double cap = a.cap > 0.0 ? a.cap : 10.0 * a.floor;
    const SparseSignal sig = sample_sparse_signal(a.n, a.s, a.floor, cap, sub);
    with_output(a.output, out, [&](std::ostream& o) {
      for (double v : sig.dense()) o << fmt::format("{}\n", v);
    });
  } else {
    throw std::invalid_argument("gen: --kind must be matrix or signal");
  }
}

// quantize -------------------------------------------------------------------

struct QuantizeArgs {
  int order = 1;
  double delta = 1.0;
  std::string input;
  std::string output;
};

void run_quantize(const QuantizeArgs& a, std::ostream& out) {
  const Vector y = read_vector_file(a.input);
  const QuantizationOutput res = sigma_delta_quantize(y, {a.order, a.delta});
  with_output(a.output, out, [&](std::ostream& o) {
    o << "q,u\n";
    for (Index i = 0; i < y.size(); ++i)
      o << fmt::format("{},{}\n", res.q[i], res.u[i]);
  });
}

// reconstruct ----------------------------------------------------------------

struct ReconstructArgs {
  std::string ensemble = "gaussian";
  Index n = 256;
  Index s = 5;
  Index m = 200;
  int order = 2;
  double delta = 0.01;
  double alpha = 0.7;
  double k_floor = 1.0;
  std::uint64_t seed = 1;
  std::optional<double> epsilon;
  std::string quantizer = "sigma-delta";
  std::string output;
  std::string xhat_output;
};

void run_reconstruct(const ReconstructArgs& a, std::ostream& out) {
  PipelineConfig pc;
  pc.ensemble = parse_ensemble(a.ensemble);
  pc.n = a.n;
  pc.s = a.s;
  pc.m = a.m;
  pc.r = a.order;
  pc.delta = a.delta;
  pc.alpha = a.alpha;
  pc.k_floor = a.k_floor;
  pc.epsilon = a.epsilon;
  pc.quantizer = parse_quantizer(a.quantizer);
  const RecoveryReport rep = full_pipeline(pc, RngStream(a.seed));
  with_output(a.output, out, [&](std::ostream& o) {
    o << "ensemble,n,s,m,r,delta,alpha,ell,seed,epsilon,support_correct,"
         "err_l2,bound_eq3,sigma_min_proj,bpdn_certified,true_support,"
         "recovered_support\n";
    o << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                     a.ensemble, a.n, a.s, a.m, a.order, a.delta, a.alpha,
                     rep.ell, a.seed, rep.epsilon,
                     rep.support_correct ? 1 : 0, rep.err_l2, rep.bound_eq3,
                     rep.sigma_min_proj, rep.bpdn_certified ? 1 : 0,
                     join(rep.true_support), join(rep.recovered_support));
  });
  if (!a.xhat_output.empty()) {
    with_output(a.xhat_output, out, [&](std::ostream& o) {
      for (double v : rep.x_hat) o << fmt::format("{}\n", v);
    });
  }
}

// ripscan --------------------------------------------------------------------

struct RipscanArgs {
  std::string mode = "exact";
  Index s = 2;
  std::uint64_t trials = 1000;
  std::string project;  // "r,ell"
  std::string input;
  std::string ensemble = "gaussian";
  Index m = 100;
  Index n = 24;
  std::uint64_t seed = 1;
  bool normalize = false;
  std::uint64_t cap = kDefaultEnumerationCap;
  std::string output;
};

void run_ripscan(const RipscanArgs& a, std::ostream& out) {
  RngStream rng(a.seed);
  Matrix phi;
  if (!a.input.empty()) {
    phi = read_matrix_file(a.input);
  } else {
    RngStream sub = rng.substream("matrix");
    phi = sample_matrix(parse_ensemble(a.ensemble), a.m, a.n, sub);
  }
  if (a.normalize) phi *= 1.0 / std::sqrt(static_cast<double>(phi.rows()));
  if (!a.project.empty()) {
    const auto comma = a.project.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("--project expects r,ell");
    const int r = parse_order(trim(a.project.substr(0, comma)));
    const auto ell =
        static_cast<Index>(parse_u64(trim(a.project.substr(comma + 1))));
    phi = projected_matrix(phi, r, ell);
  }
  RipEstimate est;
  if (a.mode == "exact") {
    est = ric_exact(phi, a.s, a.cap);
  } else if (a.mode == "mc") {
    RngStream sub = rng.substream("ripscan");
    est = ric_monte_carlo(phi, a.s, a.trials, sub);
  } else {
    throw std::invalid_argument("ripscan: --mode must be exact or mc");
  }
  with_output(a.output, out, [&](std::ostream& o) {
    o << "s,mode,value,supports_checked,rows,cols\n";
    o << fmt::format("{},{},{},{},{},{}\n", est.s, to_string(est.mode),
                     est.value, est.supports_checked, phi.rows(), phi.cols());
  });
}

// sweep ----------------------------------------------------------------------

const std::vector<std::string> kSweepKeys = {
    "ensemble", "n", "s", "r", "delta", "alpha",
    "m_grid", "trials", "seed", "output"};

}  // namespace

std::vector<std::pair<std::string, std::string>> read_flat_config(
    std::istream& in) {
  std::vector<std::pair<std::string, std::string>> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos)
      line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument(
          fmt::format("config line {}: expected key = value", lineno));
    kv.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return kv;
}

void apply_sweep_setting(SweepConfig& cfg, const std::string& key,
                         const std::string& value) {
  if (key == "ensemble") {
    cfg.ensemble = parse_ensemble(value);
  } else if (key == "n") {
    cfg.n = parse_u64(value);
  } else if (key == "s") {
    cfg.s = parse_u64(value);
  } else if (key == "r") {
    cfg.r = parse_order(value);
  } else if (key == "delta") {
    cfg.delta = parse_real(value);
  } else if (key == "alpha") {
    cfg.alpha = parse_real(value);
  } else if (key == "m_grid") {
    cfg.m_grid.clear();
    std::string v = value;
    for (char& c : v)
      if (c == '[' || c == ']') c = ' ';
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      item = trim(item);
      if (!item.empty()) cfg.m_grid.push_back(parse_u64(item));
    }
  } else if (key == "trials") {
    cfg.trials = parse_u64(value);
  } else if (key == "seed") {
    cfg.seed = parse_u64(value);
  } else if (key == "output") {
    cfg.output = value;
  } else {
    throw std::invalid_argument("unknown sweep setting '" + key + "'");
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Sigma-delta quantized compressed sensing toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "sample a measurement matrix or sparse signal");
  gen_cmd->add_option("--kind", gen.kind, "matrix|signal")->capture_default_str();
  gen_cmd->add_option("--ensemble", gen.ensemble, "gaussian|rademacher|column-model")
      ->capture_default_str();
  gen_cmd->add_option("--m", gen.m, "rows")->capture_default_str();
  gen_cmd->add_option("--n", gen.n, "columns / signal length")->capture_default_str();
  gen_cmd->add_option("--s", gen.s, "sparsity")->capture_default_str();
  gen_cmd->add_option("--floor", gen.floor, "minimum magnitude")->capture_default_str();
  gen_cmd->add_option("--cap", gen.cap, "maximum magnitude (default 10*floor)");
  gen_cmd->add_option("--seed", gen.seed)->capture_default_str();
  gen_cmd->add_option("--output,-o", gen.output);

  QuantizeArgs quant;
  auto* quant_cmd = app.add_subcommand("quantize", "greedy sigma-delta quantization of a vector");
  quant_cmd->add_option("--order,--r", quant.order)
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  quant_cmd->add_option("--delta", quant.delta)->capture_default_str();
  quant_cmd->add_option("--input,-i", quant.input, "vector file")->required();
  quant_cmd->add_option("--output,-o", quant.output);

  ReconstructArgs rec;
  std::optional<double> epsilon;
  auto* rec_cmd = app.add_subcommand("reconstruct", "run one measure/quantize/recover trial");
  rec_cmd->add_option("--ensemble", rec.ensemble)->capture_default_str();
  rec_cmd->add_option("--n", rec.n)->capture_default_str();
  rec_cmd->add_option("--s", rec.s)->capture_default_str();
  rec_cmd->add_option("--m", rec.m)->capture_default_str();
  rec_cmd->add_option("--order,--r", rec.order)
      ->check(CLI::Range(1, 3))
      ->capture_default_str();
  rec_cmd->add_option("--delta", rec.delta)->capture_default_str();
  rec_cmd->add_option("--alpha", rec.alpha)->capture_default_str();
  rec_cmd->add_option("--k-floor", rec.k_floor, "K in the amplitude floor")
      ->capture_default_str();
  rec_cmd->add_option("--seed", rec.seed)->capture_default_str();
  rec_cmd->add_option("--epsilon", epsilon, "override the l1 residual radius");
  rec_cmd->add_option("--quantizer", rec.quantizer, "sigma-delta|msq")
      ->capture_default_str();
  rec_cmd->add_option("--output,-o", rec.output);
  rec_cmd->add_option("--xhat", rec.xhat_output, "write the reconstruction here");

  RipscanArgs rip;
  auto* rip_cmd = app.add_subcommand("ripscan", "estimate a restricted isometry constant");
  rip_cmd->add_option("--mode", rip.mode, "exact|mc")->capture_default_str();
  rip_cmd->add_option("--s", rip.s, "order of the constant")->capture_default_str();
  rip_cmd->add_option("--trials", rip.trials)->capture_default_str();
  rip_cmd->add_option("--project", rip.project, "r,ell: scan (1/sqrt(ell)) P_ell V^T Phi");
  rip_cmd->add_option("--input,-i", rip.input, "matrix fixture");
  rip_cmd->add_option("--ensemble", rip.ensemble)->capture_default_str();
  rip_cmd->add_option("--m", rip.m)->capture_default_str();
  rip_cmd->add_option("--n", rip.n)->capture_default_str();
  rip_cmd->add_option("--seed", rip.seed)->capture_default_str();
  rip_cmd->add_flag("--normalize", rip.normalize, "scale by 1/sqrt(rows) first");
  rip_cmd->add_option("--cap", rip.cap, "enumeration cap")->capture_default_str();
  rip_cmd->add_option("--output,-o", rip.output);

  auto* sweep_cmd = app.add_subcommand("sweep", "decay sweep over a grid of measurement counts");
  std::string config_path;
  std::string quantizer = "sigma-delta";
  unsigned threads = 0;
  std::vector<std::string> sweep_values(kSweepKeys.size());
  std::vector<CLI::Option*> sweep_opts;
  sweep_cmd->add_option("--config", config_path, "flat key = value file");
  for (Index k = 0; k < kSweepKeys.size(); ++k) {
    sweep_opts.push_back(
        sweep_cmd->add_option("--" + kSweepKeys[k], sweep_values[k]));
  }
  sweep_cmd->add_option("--quantizer", quantizer, "sigma-delta|msq")->capture_default_str();
  sweep_cmd->add_option("--threads", threads, "0 = all cores");

  std::string sum_input;
  std::string sum_output;
  auto* sum_cmd = app.add_subcommand("summarize", "aggregate a sweep CSV");
  sum_cmd->add_option("--input,-i", sum_input, "sweep CSV")->required();
  sum_cmd->add_option("--output,-o", sum_output, "per-m aggregate CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*gen_cmd) {
      run_gen(gen, out);
    } else if (*quant_cmd) {
      run_quantize(quant, out);
    } else if (*rec_cmd) {
      rec.epsilon = epsilon;
      run_reconstruct(rec, out);
    } else if (*rip_cmd) {
      run_ripscan(rip, out);
    } else if (*sweep_cmd) {
      SweepConfig cfg;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw std::runtime_error("cannot open " + config_path);
        for (const auto& [key, value] : read_flat_config(in))
          apply_sweep_setting(cfg, key, value);
      }
      for (Index k = 0; k < kSweepKeys.size(); ++k) {
        if (sweep_opts[k]->count() > 0)
          apply_sweep_setting(cfg, kSweepKeys[k], sweep_values[k]);
      }
      cfg.quantizer = parse_quantizer(quantizer);
      cfg.threads = threads;
      const auto records = run_decay_sweep(cfg);
      with_output(cfg.output, out,
                  [&](std::ostream& o) { write_sweep_csv(o, records); });
    } else if (*sum_cmd) {
      std::ifstream in(sum_input);
      if (!in) throw std::runtime_error("cannot open " + sum_input);
      const SweepSummary summary = summarize(read_sweep_csv(in));
      write_summary_text(out, summary);
      if (sum_output.empty()) {
        out << '\n';
        write_summary_csv(out, summary);
      } else {
        with_output(sum_output, out,
                    [&](std::ostream& o) { write_summary_csv(o, summary); });
      }
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace sdq
