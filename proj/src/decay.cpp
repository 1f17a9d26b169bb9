#include "mhdk/decay.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mhdk {
namespace {

bool close(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
}

std::size_t locate_time(const NormSeries& s, double t) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    if (close(s.t[i], t)) return i;
  throw std::invalid_argument("time " + std::to_string(t) + " is not a sampled time");
}

void require_rows(const NormSeries& s, std::size_t i) {
  if (i >= s.rows()) throw std::invalid_argument("sample index is out of range");
}

}  // namespace

const std::vector<double>* series_column(const NormSeries& series, const NormKey& key) {
  if (key.kind == NormKind::sobolev) {
    if (key.value == 0.0) return &series.l2_pair;
    if (key.value == 1.0) return &series.h1_pair;
    for (std::size_t j = 0; j < series.s_values.size(); ++j)
      if (close(series.s_values[j], key.value)) return &series.hs_cols[j];
    return nullptr;
  }
  for (std::size_t j = 0; j < series.q_values.size(); ++j)
    if (close(series.q_values[j], key.value)) return &series.lq_cols[j];
  if (key.value == 2.0) return &series.l2_pair;
  return nullptr;
}

double energy_ledger_at(const NormSeries& s, std::size_t ir, std::size_t it) {
  require_rows(s, ir);
  require_rows(s, it);
  if (ir > it) throw std::invalid_argument("ledger needs r <= t");
  const double er = s.l2_pair[ir] * s.l2_pair[ir];
  const double et = s.l2_pair[it] * s.l2_pair[it];
  const double diss =
      (s.diss_u_acc[it] - s.diss_u_acc[ir]) + (s.diss_b_acc[it] - s.diss_b_acc[ir]);
  return et + diss - er;
}

double energy_ledger(const NormSeries& s, double r, double t) {
  return energy_ledger_at(s, locate_time(s, r), locate_time(s, t));
}

namespace {

bool smallness_core(double h1, double initial_l2, double c, double mu, double nu) {
  const double m = std::min(mu, nu);
  return c * c * initial_l2 * h1 < m * m;
}

}  // namespace

bool smallness_condition(const PairField& state, double initial_l2, double c_measured,
                         double mu, double nu) {
  return smallness_core(hs_norm(state, 1.0), initial_l2, c_measured, mu, nu);
}

bool smallness_at(const NormSeries& s, std::size_t i, double c_measured, double mu,
                  double nu) {
  require_rows(s, i);
  return smallness_core(s.h1_pair[i], s.l2_pair.front(), c_measured, mu, nu);
}

std::ptrdiff_t first_smallness_index(const NormSeries& s, double c_measured, double mu,
                                     double nu) {
  for (std::size_t i = 0; i < s.rows(); ++i)
    if (smallness_at(s, i, c_measured, mu, nu)) return static_cast<std::ptrdiff_t>(i);
  return -1;
}

MonotoneReport check_monotone_derivative(const NormSeries& s, std::size_t t0_index,
                                         double tol) {
  require_rows(s, t0_index);
  MonotoneReport rep;
  for (std::size_t i = t0_index; i + 1 < s.rows(); ++i) {
    const double drift = s.h1_pair[i + 1] - s.h1_pair[i];
    if (drift > rep.worst_drift) rep.worst_drift = drift;
    if (drift > tol && rep.monotone) {
      rep.monotone = false;
      rep.first_violation = static_cast<std::ptrdiff_t>(i + 1);
    }
  }
  return rep;
}

TrailingReport o_one_over_t_check(const NormSeries& s, const NormKey& key,
                                  std::size_t start_index, double slack) {
  require_rows(s, start_index);
  const std::vector<double>* col = series_column(s, key);
  if (!col) throw std::invalid_argument("series does not carry the requested norm");
  const std::size_t n = s.rows();
  if (n - start_index < 10)
    throw std::invalid_argument("need at least 10 samples past the start index");

  TrailingReport rep;
  rep.window_begin = start_index + (n - start_index) / 2;
  for (std::size_t i = rep.window_begin; i + 1 < n; ++i) {
    const double w0 = s.t[i] * (*col)[i] * (*col)[i];
    const double w1 = s.t[i + 1] * (*col)[i + 1] * (*col)[i + 1];
    if (w0 > 0.0) rep.max_ratio = std::max(rep.max_ratio, w1 / w0);
    if (w1 > w0 * (1.0 + slack) && rep.nonincreasing) {
      rep.nonincreasing = false;
      rep.first_violation = static_cast<std::ptrdiff_t>(i + 1);
    }
  }
  return rep;
}

WeightedReport weighted_energy_diagnostic(const NormSeries& s, int m, std::size_t t0_index) {
  require_rows(s, t0_index);
  if (m < 0) throw std::invalid_argument("weight exponent must be nonnegative");

  WeightedReport rep;
  rep.m = m;
  rep.t0 = s.t[t0_index];
  rep.samples = s.rows() - t0_index;
  bool first = true;

  if (m == 0) {
    // Degenerate case: the plain energy ledger anchored at t0.
    for (std::size_t i = t0_index; i < s.rows(); ++i) {
      const double defect = energy_ledger_at(s, t0_index, i);
      if (first || defect > rep.max_violation) {
        rep.max_violation = defect;
        rep.time_of_max = s.t[i];
        first = false;
      }
    }
    rep.max_rhs = s.l2_pair[t0_index] * s.l2_pair[t0_index];
    return rep;
  }

  const std::vector<double>* col = series_column(s, {NormKind::sobolev, double(m)});
  if (!col) throw std::invalid_argument("series does not carry the s = m norm column");

  double integral = 0.0;
  auto weight = [&](std::size_t i, double p) {
    const double dt0 = s.t[i] - rep.t0;
    return std::pow(dt0, p) * (*col)[i] * (*col)[i];
  };
  for (std::size_t i = t0_index; i < s.rows(); ++i) {
    if (i > t0_index)
      integral +=
          0.5 * (weight(i - 1, m - 1.0) + weight(i, m - 1.0)) * (s.t[i] - s.t[i - 1]);
    const double lhs = weight(i, double(m));
    const double rhs = m * integral;
    if (first || lhs - rhs > rep.max_violation) {
      rep.max_violation = lhs - rhs;
      rep.time_of_max = s.t[i];
      first = false;
    }
    rep.max_rhs = std::max(rep.max_rhs, rhs);
  }
  return rep;
}

DecayFit fit_decay(const NormSeries& s, const NormKey& key, double t_lo, double t_hi,
                   int dim, double slack) {
  if (!(t_lo < t_hi)) throw std::invalid_argument("fit window must have t_lo < t_hi");
  const std::vector<double>* col = series_column(s, key);
  if (!col) throw std::invalid_argument("series does not carry the requested norm");

  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < s.rows(); ++i) {
    if (s.t[i] < t_lo || s.t[i] > t_hi) continue;
    if (!(s.t[i] > 0.0)) throw std::invalid_argument("fit window must have positive times");
    if (!((*col)[i] > 0.0))
      throw std::invalid_argument("norm vanishes inside the fit window (log undefined)");
    lx.push_back(std::log(s.t[i]));
    ly.push_back(std::log((*col)[i]));
  }
  if (lx.size() < 5) throw std::invalid_argument("fit window holds fewer than 5 samples");

  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double det = n * sxx - sx * sx;
  if (det <= 0.0) throw std::invalid_argument("degenerate fit window");

  DecayFit fit;
  fit.key = key;
  fit.t_lo = t_lo;
  fit.t_hi = t_hi;
  fit.samples = static_cast<int>(lx.size());
  fit.slope = (n * sxy - sx * sy) / det;
  fit.intercept = (sy - fit.slope * sx) / n;
  double rss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    const double e = ly[i] - (fit.intercept + fit.slope * lx[i]);
    rss += e * e;
  }
  fit.residual = std::sqrt(rss / n);

  if (key.kind == NormKind::sobolev) {
    fit.threshold = -0.5 * key.value;
  } else {
    if (dim < 1) throw std::invalid_argument("Lebesgue threshold needs the dimension");
    const double q = key.value;
    fit.threshold = (q == kInfiniteQ) ? -dim / 4.0 : -(dim / 4.0 - dim / (2.0 * q));
  }
  fit.consistent = fit.slope <= fit.threshold + slack;
  return fit;
}

double linf_via_gn(const PairField& state, double c) {
  const int d = state.grid()->dim;
  const double l2 = hs_norm(state, 0.0);
  const double h2 = hs_norm(state, 2.0);
  switch (d) {
    case 2: return c * std::sqrt(l2 * h2);
    case 3: return c * std::pow(l2, 0.25) * std::pow(h2, 0.75);
    case 4: return c * h2;
    default: throw std::invalid_argument("sup-norm bound needs dimension 2, 3, or 4");
  }
}

InequalityReport linf_via_gn_report(const PairField& state, double c) {
  InequalityReport rep;
  rep.case_id = "linf_via_gn";
  rep.lhs = lq_norm(state, kInfiniteQ);
  rep.rhs = linf_via_gn(state, c);
  rep.degenerate = rep.rhs == 0.0;
  rep.ratio = rep.degenerate ? 0.0 : rep.lhs / rep.rhs;
  return rep;
}

}  // namespace mhdk
