#include <malloc.h>

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mhdk/checkpoint.hpp"
#include "mhdk/config.hpp"
#include "mhdk/decay.hpp"
#include "mhdk/duhamel.hpp"
#include "mhdk/inequalities.hpp"
#include "mhdk/initial_data.hpp"
#include "mhdk/norms.hpp"
#include "mhdk/series_io.hpp"
#include "mhdk/solver.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mhdk;

namespace {

std::string now_iso() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  char buf[32];
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string fnv_id(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string fmt_g(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Comma split that leaves "(l,m)" argument lists intact.
std::vector<std::string> split_cases(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

double parse_q_flag(const std::string& v) {
  if (v == "inf") return kInfiniteQ;
  return std::stod(v);
}

int do_run(const std::string& config_path, const std::string& out_dir) {
  const RunConfig c = parse_config(config_path);
  const std::string cfg_text = slurp(config_path);
  const std::string run_id = fnv_id(cfg_text);
  fs::create_directories(out_dir);

  const Grid g = make_grid(c.dim, c.n, c.box_length);
  const PairField p0 = make_initial_pair(g, c.init);
  const MHDState s0{p0.u, p0.b, 0.0};

  SolverConfig sc = to_solver_config(c);
  RunOptions opts = to_run_options(c);

  std::vector<std::string> outputs;
  if (c.checkpoint_every > 0) {
    opts.on_snapshot = [&](const MHDState& s, long step) {
      if (step == 0 || step % c.checkpoint_every != 0) return;
      char name[48];
      std::snprintf(name, sizeof name, "checkpoint_%08ld.mhdk", step);
      write_checkpoint((fs::path(out_dir) / name).string(), s, c.mu, c.nu);
      outputs.push_back(name);
    };
  }

  json manifest;
  manifest["run_id"] = run_id;
  manifest["code_version"] = "mhdk 1.0";
  manifest["config_path"] = config_path;
  manifest["config"] = cfg_text;
  manifest["started_at"] = now_iso();
  manifest["grid"] = {{"dim", c.dim}, {"n", c.n}, {"box_length", c.box_length}};
  manifest["physics"] = {{"mu", c.mu}, {"nu", c.nu}, {"dt", c.dt}, {"t_end", c.t_end}};
  manifest["seed"] = c.init.seed;
  manifest["init"] = init_kind_name(c.init.kind);

  auto finish = [&](const std::string& status, const std::string& error) {
    manifest["status"] = status;
    if (!error.empty()) manifest["error"] = error;
    manifest["finished_at"] = now_iso();
    manifest["outputs"] = outputs;
    std::ofstream mf(fs::path(out_dir) / "manifest.json", std::ios::binary);
    mf << manifest.dump(2) << "\n";
  };

  NormSeries series;
  try {
    const RunResult res = run(s0, sc, opts, series);
    emit_series(series, (fs::path(out_dir) / "norms.csv").string());
    outputs.push_back("norms.csv");
    write_checkpoint((fs::path(out_dir) / "final.mhdk").string(), res.final_state, c.mu, c.nu);
    outputs.push_back("final.mhdk");
    manifest["steps"] = res.steps;
    if (opts.track_wraparound)
      manifest["wraparound_time"] =
          res.wraparound_time >= 0.0 ? json(res.wraparound_time) : json(nullptr);
    finish("completed", "");
    std::cout << "run " << run_id << ": " << res.steps << " steps to t = " << c.t_end << ", "
              << series.rows() << " records -> " << out_dir << "\n";
    if (res.wraparound_time >= 0.0)
      std::cout << "wraparound detected at t = " << res.wraparound_time << "\n";
    return 0;
  } catch (const NumericalAbort& e) {
    if (series.rows() > 0) {
      emit_series(series, (fs::path(out_dir) / "norms.csv").string());
      outputs.push_back("norms.csv");
    }
    finish("aborted", e.what());
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 2;
  }
}

int do_check_inequalities(int dim, int n, double box, const std::string& cases_csv,
                          int samples, std::uint64_t seed, int band, double slope,
                          const std::string& out_path, int workers) {
  const Grid g = make_grid(dim, n, box);
  const BandSpec spec{band, slope};

  std::vector<InequalityCase> cases;
  for (const std::string& token : split_cases(cases_csv)) {
    const InequalityCase ic = parse_case(token);
    const int cd = case_dim(ic);
    if (cd != 0 && cd != dim)
      throw std::invalid_argument("case " + case_name(ic) + " is stated in dimension " +
                                  std::to_string(cd) + ", not " + std::to_string(dim));
    cases.push_back(ic);
  }
  if (cases.empty()) throw std::invalid_argument("no cases requested");

  std::ostringstream csv;
  csv << "case,dim,n,samples,seed,band,slope,max_ratio,mean_ratio,degenerate\n";
  for (const InequalityCase& ic : cases) {
    const EnsembleReport r = ensemble_constant(ic, g, samples, seed, spec, workers);
    csv << case_name(ic) << ',' << r.dim << ',' << r.n << ',' << r.samples << ',' << r.seed
        << ',' << r.band << ',' << fmt_g(r.slope) << ',' << fmt_g(r.max_ratio) << ','
        << fmt_g(r.mean_ratio) << ',' << r.degenerate_count << '\n';
  }
  if (out_path.empty()) {
    std::cout << csv.str();
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");
    out << csv.str();
  }
  return 0;
}

int do_duhamel_compare(const std::string& config_path, double horizon, int picard,
                       int panels) {
  const RunConfig c = parse_config(config_path);
  const Grid g = make_grid(c.dim, c.n, c.box_length);
  const PairField p0 = make_initial_pair(g, c.init);
  MHDState composed{p0.u, p0.b, 0.0};

  const long steps = std::lround(horizon / c.dt);
  if (steps < 1 || std::abs(steps * c.dt - horizon) > 1e-9)
    throw std::invalid_argument("horizon must be a positive whole number of dt steps");

  SolverConfig sc = to_solver_config(c);
  Stepper stepper(g, sc);
  for (long i = 0; i < steps; ++i) stepper.step(composed);

  DuhamelOptions opts;
  opts.mu = c.mu;
  opts.nu = c.nu;
  opts.picard_iters = picard > 0 ? picard : c.picard_iters;
  opts.quad_panels = panels > 0 ? panels : c.quad_panels;
  opts.dealias = c.dealias;
  opts.nonlinear = c.nonlinear;
  const DuhamelResult mild = duhamel_solve(MHDState{p0.u, p0.b, 0.0}, horizon, opts);

  PairField diff{composed.u, composed.b};
  for (int i = 0; i < g->dim; ++i) {
    diff.u.comp[i].c -= mild.final_state.u.comp[i].c;
    diff.b.comp[i].c -= mild.final_state.b.comp[i].c;
  }
  const double ref = hs_norm(PairField{composed.u, composed.b}, 0.0);
  const double rel = ref > 0.0 ? hs_norm(diff, 0.0) / ref : 0.0;

  std::cout << "horizon = " << fmt_g(horizon) << ", steps_composed = " << steps
            << ", picard_iters = " << opts.picard_iters
            << ", quad_panels = " << opts.quad_panels << "\n";
  for (std::size_t j = 0; j < mild.increments.size(); ++j)
    std::cout << "increment[" << j + 1 << "] = " << fmt_g(mild.increments[j]) << "\n";
  std::cout << "discrepancy_l2_rel = " << fmt_g(rel) << "\n";
  return 0;
}

int do_fit_decay(const std::string& series_path, double s, bool has_s, const std::string& q,
                 const std::string& window, int dim, double slack) {
  const NormSeries series = read_series(series_path);
  const std::size_t colon = window.find(':');
  if (colon == std::string::npos)
    throw std::invalid_argument("window must look like t_lo:t_hi");
  const double t_lo = std::stod(window.substr(0, colon));
  const double t_hi = std::stod(window.substr(colon + 1));

  NormKey key;
  if (has_s) {
    key = {NormKind::sobolev, s};
  } else {
    key = {NormKind::lebesgue, parse_q_flag(q)};
    if (dim < 1)
      throw std::invalid_argument("--dim is required for Lebesgue fits (threshold depends on it)");
  }
  const DecayFit fit = fit_decay(series, key, t_lo, t_hi, dim, slack);
  std::cout << "norm = " << (has_s ? "hs:" : "lq:")
            << (key.value == kInfiniteQ ? std::string("inf") : fmt_g(key.value))
            << ", window = [" << fmt_g(t_lo) << ", " << fmt_g(t_hi) << "], samples = "
            << fit.samples << "\n";
  std::cout << "slope = " << fmt_g(fit.slope) << ", intercept = " << fmt_g(fit.intercept)
            << ", rms_residual = " << fmt_g(fit.residual) << "\n";
  std::cout << "threshold = " << fmt_g(fit.threshold) << " (+ slack " << fmt_g(slack)
            << "), consistent = " << (fit.consistent ? "yes" : "no") << "\n";
  return 0;
}

int do_norms(const std::string& checkpoint_path, const std::string& s_csv,
             const std::string& q_csv) {
  const Checkpoint cp = read_checkpoint(checkpoint_path);
  const Grid& g = cp.state.grid();
  const PairField p{cp.state.u, cp.state.b};
  std::cout << "dim = " << g->dim << ", n = " << g->n << ", box_length = " << g->box_length
            << ", t = " << fmt_g(cp.state.t) << ", mu = " << fmt_g(cp.mu)
            << ", nu = " << fmt_g(cp.nu) << "\n";
  std::cout << "l2_pair = " << fmt_g(hs_norm(p, 0.0)) << "\n";
  std::cout << "h1_pair = " << fmt_g(hs_norm(p, 1.0)) << "\n";
  if (!s_csv.empty())
    for (const std::string& tok : split_cases(s_csv))
      std::cout << "hs:" << tok << " = " << fmt_g(hs_norm(p, std::stod(tok))) << "\n";
  if (!q_csv.empty())
    for (const std::string& tok : split_cases(q_csv))
      std::cout << "lq:" << tok << " = " << fmt_g(lq_norm(p, parse_q_flag(tok))) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
#ifdef __GLIBC__
  // Spectral arrays are hundreds of KB and recycled on every solver stage;
  // keep them on the heap instead of mmap/munmap round trips.
  mallopt(M_MMAP_THRESHOLD, 512 * 1024 * 1024);
  mallopt(M_TRIM_THRESHOLD, 512 * 1024 * 1024);
#endif
  CLI::App app{"pseudo-spectral incompressible MHD on periodic boxes"};
  app.require_subcommand(1);

  std::string config_path, out_dir = "out";
  CLI::App* cmd_run = app.add_subcommand("run", "evolve the MHD pair per a config file");
  cmd_run->add_option("--config", config_path, "key=value config file")->required();
  cmd_run->add_option("--out", out_dir, "output directory (default: out)");

  int dim = 2, n = 0, samples = 500, band = 0, workers = 0;
  double box = 2.0 * M_PI, slope = 1.0;
  std::uint64_t seed = 1;
  std::string cases_csv, out_path;
  CLI::App* cmd_ineq =
      app.add_subcommand("check-inequalities", "ensemble constants for inequality cases");
  cmd_ineq->add_option("--dim", dim, "space dimension (2, 3, or 4)")->required();
  cmd_ineq->add_option("--cases", cases_csv, "comma list of case ids, e.g. 2.7a,2.10f(0,3)")
      ->required();
  cmd_ineq->add_option("--samples", samples, "ensemble size (default 500)");
  cmd_ineq->add_option("--seed", seed, "ensemble seed (default 1)");
  cmd_ineq->add_option("--n", n, "points per axis (default 64/32/16 for dim 2/3/4)");
  cmd_ineq->add_option("--box", box, "box length (default 2*pi)");
  cmd_ineq->add_option("--band", band, "spectral band of the samples (0 = auto)");
  cmd_ineq->add_option("--slope", slope, "spectral slope of the samples (default 1)");
  cmd_ineq->add_option("--out", out_path, "CSV file (default: stdout)");
  cmd_ineq->add_option("--workers", workers, "worker threads (0 = MHDK_WORKERS or cores)");

  double horizon = 0.05;
  int picard = 0, panels = 0;
  CLI::App* cmd_duh =
      app.add_subcommand("duhamel-compare", "composed stepper vs Picard mild solution");
  cmd_duh->add_option("--config", config_path, "key=value config file")->required();
  cmd_duh->add_option("--horizon", horizon, "comparison horizon (default 0.05)");
  cmd_duh->add_option("--picard", picard, "Picard iterations (default: config)");
  cmd_duh->add_option("--panels", panels, "quadrature panels (default: config)");

  std::string series_path, window, q_flag;
  double s_flag = 0.0;
  double slack = 0.1;
  CLI::App* cmd_fit = app.add_subcommand("fit-decay", "log-log slope of a persisted series");
  cmd_fit->add_option("--series", series_path, "norms.csv from a run")->required();
  CLI::Option* opt_s = cmd_fit->add_option("--s", s_flag, "Sobolev order to fit");
  CLI::Option* opt_q = cmd_fit->add_option("--q", q_flag, "Lebesgue exponent to fit (or inf)");
  opt_s->excludes(opt_q);
  opt_q->excludes(opt_s);
  cmd_fit->add_option("--window", window, "fit window t_lo:t_hi")->required();
  cmd_fit->add_option("--dim", dim, "dimension (needed for --q thresholds)");
  cmd_fit->add_option("--slack", slack, "slope slack (default 0.1)");

  std::string checkpoint_path, s_csv, q_csv;
  CLI::App* cmd_norms = app.add_subcommand("norms", "norms of a checkpointed state");
  cmd_norms->add_option("--checkpoint", checkpoint_path, "checkpoint file")->required();
  cmd_norms->add_option("--s", s_csv, "comma list of Sobolev orders");
  cmd_norms->add_option("--q", q_csv, "comma list of Lebesgue exponents (inf allowed)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (cmd_run->parsed()) return do_run(config_path, out_dir);
    if (cmd_ineq->parsed()) {
      if (n == 0) n = dim == 2 ? 64 : dim == 3 ? 32 : 16;
      return do_check_inequalities(dim, n, box, cases_csv, samples, seed, band, slope,
                                   out_path, workers);
    }
    if (cmd_duh->parsed()) return do_duhamel_compare(config_path, horizon, picard, panels);
    if (cmd_fit->parsed()) {
      if (opt_s->count() == 0 && opt_q->count() == 0)
        throw std::invalid_argument("fit-decay needs --s or --q");
      return do_fit_decay(series_path, s_flag, opt_s->count() > 0, q_flag, window,
                          cmd_fit->count("--dim") ? dim : 0, slack);
    }
    if (cmd_norms->parsed()) return do_norms(checkpoint_path, s_csv, q_csv);
  } catch (const NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
