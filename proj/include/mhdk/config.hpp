#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhdk/initial_data.hpp"
#include "mhdk/solver.hpp"

namespace mhdk {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_ = 0;
};

// One run, fully specified. Flat key=value text; '#' starts a comment;
// unknown and duplicate keys are errors. Required keys: dim, n, box_length,
// mu, nu, dt, t_end, init, seed, record_every, s_list, q_list. The rest are
// optional with the defaults below.
struct RunConfig {
  int dim = 2;
  int n = 0;
  double box_length = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  double dt = 0.0;
  double t_end = 0.0;
  InitConfig init;            // init, seed, amplitude, band, slope, sigma
  int record_every = 1;
  std::vector<double> s_list;
  std::vector<double> q_list; // "inf" allowed

  Integrator integrator = Integrator::if_rk4;
  bool dealias = true;
  bool nonlinear = true;
  bool cfl_abort = false;
  bool track_wraparound = false;  // defaults to true for gaussian_localized init
  double smallness_c = 0.0;       // 0 = not configured
  long checkpoint_every = 0;      // steps between checkpoints; 0 = final only
  int picard_iters = 4;
  int quad_panels = 2;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config(const std::string& path);

SolverConfig to_solver_config(const RunConfig& c);
RunOptions to_run_options(const RunConfig& c);  // callbacks left empty

}  // namespace mhdk
