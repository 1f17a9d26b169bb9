#pragma once

#include <cstddef>
#include <vector>

#include "mhdk/norms.hpp"
#include "mhdk/series.hpp"
#include "mhdk/spectral_field.hpp"

namespace mhdk {

// Selects a norm column of a NormSeries: a Sobolev order s or a Lebesgue
// exponent q (kInfiniteQ allowed).
enum class NormKind { sobolev, lebesgue };

struct NormKey {
  NormKind kind = NormKind::sobolev;
  double value = 0.0;
};

// Column of `series` tracking `key`, or nullptr if the series does not carry
// it. Sobolev 0 and 1 map to the always-present l2/h1 columns, as does
// Lebesgue q = 2 (Parseval).
const std::vector<double>* series_column(const NormSeries& series, const NormKey& key);

// Signed energy balance defect between two sampled times r <= t:
//   ||(u,b)(t)||_2^2 + 2 mu int_r^t ||Du||_2^2 + 2 nu int_r^t ||Db||_2^2 - ||(u,b)(r)||_2^2,
// with the integrals read off the accumulated dissipation columns. Negative
// or zero means the energy inequality holds between the two samples.
double energy_ledger(const NormSeries& series, double r, double t);
double energy_ledger_at(const NormSeries& series, std::size_t ir, std::size_t it);

// Strict smallness test  c^2 ||(u0,b0)||_2 ||(Du,Db)||_2 < min(mu,nu)^2,
// with the derivative norm taken from the given state.
bool smallness_condition(const PairField& state, double initial_l2, double c_measured,
                         double mu, double nu);
// Same predicate on a recorded series row (initial L2 = first l2 sample).
// First index at which it holds, or -1 if it never does.
bool smallness_at(const NormSeries& series, std::size_t i, double c_measured, double mu,
                  double nu);
std::ptrdiff_t first_smallness_index(const NormSeries& series, double c_measured, double mu,
                                     double nu);

struct MonotoneReport {
  bool monotone = true;
  std::ptrdiff_t first_violation = -1;  // sample index, -1 when none
  double worst_drift = 0.0;             // max increase between consecutive samples
};

// Nonincrease of ||(Du,Db)||_2 from t0_index on, allowing `tol` of absolute
// upward drift per sample.
MonotoneReport check_monotone_derivative(const NormSeries& series, std::size_t t0_index,
                                         double tol = 1e-10);

struct TrailingReport {
  bool nonincreasing = true;
  std::size_t window_begin = 0;         // first index of the trailing half
  std::ptrdiff_t first_violation = -1;
  double max_ratio = 0.0;               // max of w_{i+1}/w_i over the window
};

// Finite-horizon surrogate for f(t) = o(1/t): checks that t * f(t)^2 is
// nonincreasing on the trailing half of [start_index, end], where f is the
// selected norm column. Requires at least 10 samples past start_index.
TrailingReport o_one_over_t_check(const NormSeries& series, const NormKey& key,
                                  std::size_t start_index = 0, double slack = 1e-12);

struct WeightedReport {
  int m = 0;
  double t0 = 0.0;
  double max_violation = 0.0;  // max over the window of lhs_w - rhs_w
  double time_of_max = 0.0;
  double max_rhs = 0.0;
  std::size_t samples = 0;
};

// Weighted derivative-energy comparison from sample t0_index onward:
//   lhs_w(t) = (t - t0)^m ||(D^m u, D^m b)(t)||_2^2
//   rhs_w(t) = m int_{t0}^t (tau - t0)^{m-1} ||(D^m u, D^m b)(tau)||_2^2 dtau
// (trapezoid on the recorded grid). Requires the series to carry s = m.
// m = 0 degenerates to the energy ledger with r = t0: lhs_w(t) is the energy
// plus accumulated dissipation, rhs_w the energy at t0.
WeightedReport weighted_energy_diagnostic(const NormSeries& series, int m,
                                          std::size_t t0_index);

struct DecayFit {
  NormKey key;
  double t_lo = 0.0, t_hi = 0.0;
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;   // rms deviation of the log-log fit
  double threshold = 0.0;  // reference slope: -s/2, or -(n/4 - n/(2q))
  bool consistent = false; // slope <= threshold + slack
  int samples = 0;
};

// Least-squares slope of log(norm) against log(t) over samples with
// t in [t_lo, t_hi]. `dim` enters only the Lebesgue threshold. Needs at
// least 5 samples, positive times and norms.
DecayFit fit_decay(const NormSeries& series, const NormKey& key, double t_lo, double t_hi,
                   int dim, double slack = 0.1);

// Sup-norm bound from L2/H2 norms with the supplied constant:
//   n=2: c sqrt(l2 h2);  n=3: c l2^{1/4} h2^{3/4};  n=4: c h2.
double linf_via_gn(const PairField& state, double c);
// Same bound against the sampled sup, as lhs = sup, rhs = bound.
InequalityReport linf_via_gn_report(const PairField& state, double c);

}  // namespace mhdk
