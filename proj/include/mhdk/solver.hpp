#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mhdk/series.hpp"
#include "mhdk/spectral_field.hpp"

namespace mhdk {

// Thrown when the integration cannot continue (blow-up of coefficients,
// violated CFL bound with cfl_abort set, Picard divergence).
class NumericalAbort : public std::runtime_error {
 public:
  explicit NumericalAbort(const std::string& what) : std::runtime_error(what) {}
};

struct MHDState {
  VectorField u;
  VectorField b;
  double t = 0.0;
  Grid grid() const { return u.grid(); }
};

enum class Integrator { if_rk4, duhamel_picard };

struct SolverConfig {
  double mu = 1.0;          // velocity dissipation
  double nu = 1.0;          // magnetic dissipation
  double dt = 1e-2;
  bool dealias = true;
  bool nonlinear = true;    // false: pure heat flow of both fields
  Integrator integrator = Integrator::if_rk4;
  double cfl_limit = 0.8;   // advisory unless cfl_abort
  bool cfl_abort = false;
  int picard_iters = 4;     // duhamel_picard only
  int quad_panels = 2;      // duhamel_picard only
};

struct NonlinearRhs {
  VectorField u_rhs;
  VectorField b_rhs;
  double max_speed = 0.0;   // max over the grid of max(|u|_inf, |b|_inf), per component
};

// Projected divergence-form nonlinearity:
//   u_rhs = -P div(u (x) u - b (x) b),  b_rhs = -P div(u (x) b - b (x) u).
// The induction flux is antisymmetric, so its divergence is solenoidal
// already and P acts on it as the identity. Products are formed pointwise in
// physical space; the result is dealiased (when requested) before
// differentiation.
NonlinearRhs nonlinear_rhs(const VectorField& u, const VectorField& b, bool dealias);

// exp(-kappa tau |k|^2) applied mode by mode.  tau must be >= 0.
SpectralField heat_semigroup(const SpectralField& f, double tau, double kappa);
VectorField heat_semigroup(const VectorField& v, double tau, double kappa);

// Inner products of the three advective couplings, for conservation checks:
//   {<u, (u.D)u>, <u, (b.D)b>, <b, (u.D)b>, <b, (b.D)u>}.
std::array<double, 4> advection_inner_products(const VectorField& u, const VectorField& b);

// One integrating-factor RK4 stepper with cached semigroup tables.
class Stepper {
 public:
  Stepper(Grid g, const SolverConfig& cfg);
  void step(MHDState& s) const;
  const SolverConfig& config() const { return cfg_; }

 private:
  SolverConfig cfg_;
  Grid grid_;
  ArrayXr eu_half_, eu_full_;  // exp(-mu dt/2 |k|^2), exp(-mu dt |k|^2)
  ArrayXr eb_half_, eb_full_;
};

struct RunOptions {
  double t_end = 1.0;
  int record_every = 1;                   // snapshots every this many steps
  std::vector<double> s_list;             // extra Sobolev orders to record
  std::vector<double> q_list;             // extra Lebesgue exponents to record
  bool track_wraparound = false;          // watch for mass reaching the box edge
  std::function<void(const MHDState&, long)> on_snapshot;  // state, step index
};

struct RunResult {
  MHDState final_state;
  double wraparound_time = -1.0;  // first recorded time the edge shell is excited
  long steps = 0;
};

// Integrates s0 forward to t_end, appending one row to `out` at step 0, every
// record_every steps, and at the final step.  On NumericalAbort the rows
// recorded so far remain in `out` for the caller to persist.
RunResult run(const MHDState& s0, const SolverConfig& cfg, const RunOptions& opts,
              NormSeries& out);

}  // namespace mhdk
