#include "mhdk/solver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "mhdk/duhamel.hpp"
#include "mhdk/norms.hpp"
#include "mhdk/spectral_ops.hpp"
#include "mhdk/transforms.hpp"

namespace mhdk {
namespace {

std::string at_time(const char* what, double t) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "%s at t = %.6g", what, t);
  return buf;
}

}  // namespace

NonlinearRhs nonlinear_rhs(const VectorField& u, const VectorField& b, bool do_dealias) {
  const Grid& g = u.grid();
  const int d = u.dim();
  const Index mc = g->mode_count;

  std::vector<ArrayXr> up(d), bp(d);
  double speed = 0.0;
  for (int i = 0; i < d; ++i) {
    up[i] = inverse(u.comp[i]);
    bp[i] = inverse(b.comp[i]);
    speed = std::max({speed, up[i].abs().maxCoeff(), bp[i].abs().maxCoeff()});
  }

  // Momentum flux u (x) u - b (x) b is symmetric; induction flux
  // u (x) b - b (x) u is antisymmetric with zero diagonal, so only the
  // upper triangles are transformed.
  std::array<std::array<ArrayXc, 4>, 4> S, T;
  for (int i = 0; i < d; ++i)
    for (int j = i; j < d; ++j) {
      S[i][j] = forward(g, up[i] * up[j] - bp[i] * bp[j]).c;
      if (do_dealias) S[i][j] *= g->keep.cast<Complex>();
      if (j > i) {
        T[i][j] = forward(g, up[j] * bp[i] - bp[j] * up[i]).c;
        if (do_dealias) T[i][j] *= g->keep.cast<Complex>();
      }
    }

  const double* kk[4] = {};
  for (int a = 0; a < d; ++a) kk[a] = g->k[a].data();
  const double* iksq = g->inv_ksq.data();

  // Leray projection of -div S, folded into the divergence assembly:
  // with q = k_j k_l S_jl / |k|^2 the projected coefficient is
  // -i (k_l S_il - k_i q). The matching contraction k_j k_l T_jl vanishes
  // identically by antisymmetry, so -div T needs no projection at all.
  ArrayXc q(mc);
  for (Index m = 0; m < mc; ++m) {
    Complex acc(0.0, 0.0);
    for (int j = 0; j < d; ++j) {
      acc += (kk[j][m] * kk[j][m]) * S[j][j][m];
      for (int l = j + 1; l < d; ++l) acc += (2.0 * kk[j][m] * kk[l][m]) * S[j][l][m];
    }
    q[m] = iksq[m] * acc;
  }

  NonlinearRhs out;
  out.max_speed = speed;
  for (int i = 0; i < d; ++i) {
    ArrayXc au(mc), ab(mc);
    for (Index m = 0; m < mc; ++m) {
      Complex su(0.0, 0.0), sb(0.0, 0.0);
      for (int j = 0; j < d; ++j) {
        su += kk[j][m] * (j >= i ? S[i][j][m] : S[j][i][m]);
        if (j > i)
          sb += kk[j][m] * T[i][j][m];
        else if (j < i)
          sb -= kk[j][m] * T[j][i][m];
      }
      su -= kk[i][m] * q[m];
      au[m] = Complex(su.imag(), -su.real());
      ab[m] = Complex(sb.imag(), -sb.real());
    }
    out.u_rhs.comp.push_back(SpectralField{g, std::move(au)});
    out.b_rhs.comp.push_back(SpectralField{g, std::move(ab)});
  }
  return out;
}

SpectralField heat_semigroup(const SpectralField& f, double tau, double kappa) {
  if (!(tau >= 0.0)) throw std::invalid_argument("semigroup time must be nonnegative");
  SpectralField out = f;
  out.c *= ((-(kappa * tau)) * f.grid->ksq).exp();
  return out;
}

VectorField heat_semigroup(const VectorField& v, double tau, double kappa) {
  if (!(tau >= 0.0)) throw std::invalid_argument("semigroup time must be nonnegative");
  const ArrayXr table = ((-(kappa * tau)) * v.grid()->ksq).exp();
  VectorField out = v;
  for (auto& c : out.comp) c.c *= table;
  return out;
}

namespace {

// (a . D) c, products in physical space, result dealiased.
VectorField advect(const VectorField& a, const VectorField& c) {
  const Grid& g = a.grid();
  const int d = a.dim();
  std::vector<ArrayXr> ap(d);
  for (int j = 0; j < d; ++j) ap[j] = inverse(a.comp[j]);
  VectorField w = zero_vector_field(g);
  for (int i = 0; i < d; ++i) {
    ArrayXr acc = ArrayXr::Zero(g->mode_count);
    for (int j = 0; j < d; ++j) acc += ap[j] * inverse(derivative(c.comp[i], j));
    w.comp[i] = dealias(forward(g, acc));
  }
  return w;
}

}  // namespace

std::array<double, 4> advection_inner_products(const VectorField& u, const VectorField& b) {
  return {inner_l2(u, advect(u, u)), inner_l2(u, advect(b, b)),
          inner_l2(b, advect(u, b)), inner_l2(b, advect(b, u))};
}

Stepper::Stepper(Grid g, const SolverConfig& cfg) : cfg_(cfg), grid_(std::move(g)) {
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt))
    throw std::invalid_argument("dt must be positive and finite");
  if (!(cfg.mu >= 0.0) || !(cfg.nu >= 0.0))
    throw std::invalid_argument("dissipation coefficients must be nonnegative");
  const ArrayXr& ks = grid_->ksq;
  eu_half_ = ((-(cfg.mu * (0.5 * cfg.dt))) * ks).exp();
  eu_full_ = ((-(cfg.mu * cfg.dt)) * ks).exp();
  eb_half_ = ((-(cfg.nu * (0.5 * cfg.dt))) * ks).exp();
  eb_full_ = ((-(cfg.nu * cfg.dt)) * ks).exp();
}

void Stepper::step(MHDState& s) const {
  if (s.grid() != grid_) throw std::invalid_argument("state grid does not match the stepper");
  const double h = cfg_.dt;

  if (!cfg_.nonlinear) {
    for (auto& c : s.u.comp) c.c *= eu_full_;
    for (auto& c : s.b.comp) c.c *= eb_full_;
    s.t += h;
    return;
  }

  const int d = grid_->dim;
  NonlinearRhs n1 = nonlinear_rhs(s.u, s.b, cfg_.dealias);
  const double cfl = n1.max_speed * h / grid_->dx();
  if (cfg_.cfl_abort && cfl > cfg_.cfl_limit)
    throw NumericalAbort(at_time("advective CFL number exceeded the configured limit", s.t));

  MHDState y{s.u, s.b, s.t + 0.5 * h};
  for (int i = 0; i < d; ++i) {
    y.u.comp[i].c = (s.u.comp[i].c + (0.5 * h) * n1.u_rhs.comp[i].c) * eu_half_;
    y.b.comp[i].c = (s.b.comp[i].c + (0.5 * h) * n1.b_rhs.comp[i].c) * eb_half_;
  }
  NonlinearRhs n2 = nonlinear_rhs(y.u, y.b, cfg_.dealias);

  for (int i = 0; i < d; ++i) {
    y.u.comp[i].c = s.u.comp[i].c * eu_half_ + (0.5 * h) * n2.u_rhs.comp[i].c;
    y.b.comp[i].c = s.b.comp[i].c * eb_half_ + (0.5 * h) * n2.b_rhs.comp[i].c;
  }
  NonlinearRhs n3 = nonlinear_rhs(y.u, y.b, cfg_.dealias);

  y.t = s.t + h;
  for (int i = 0; i < d; ++i) {
    y.u.comp[i].c = s.u.comp[i].c * eu_full_ + h * (eu_half_ * n3.u_rhs.comp[i].c);
    y.b.comp[i].c = s.b.comp[i].c * eb_full_ + h * (eb_half_ * n3.b_rhs.comp[i].c);
  }
  NonlinearRhs n4 = nonlinear_rhs(y.u, y.b, cfg_.dealias);

  const double w = h / 6.0;
  for (int i = 0; i < d; ++i) {
    s.u.comp[i].c = s.u.comp[i].c * eu_full_ +
                    w * (eu_full_ * n1.u_rhs.comp[i].c +
                         2.0 * (eu_half_ * (n2.u_rhs.comp[i].c + n3.u_rhs.comp[i].c)) +
                         n4.u_rhs.comp[i].c);
    s.b.comp[i].c = s.b.comp[i].c * eb_full_ +
                    w * (eb_full_ * n1.b_rhs.comp[i].c +
                         2.0 * (eb_half_ * (n2.b_rhs.comp[i].c + n3.b_rhs.comp[i].c)) +
                         n4.b_rhs.comp[i].c);
  }
  s.t += h;
}

namespace {

std::vector<Index> edge_shell(const Grid& g) {
  const double L = g->box_length;
  const double h = g->dx();
  const double cut = 0.5 * L - 2.0 * h;
  std::vector<Index> shell;
  std::array<int, 4> idx{};
  for (Index f = 0; f < g->mode_count; ++f) {
    double dist = 0.0;
    for (int a = 0; a < g->dim; ++a) {
      double dd = std::fmod(idx[a] * h - 0.5 * L, L);
      if (dd < -0.5 * L) dd += L;
      if (dd >= 0.5 * L) dd -= L;
      dist = std::max(dist, std::abs(dd));
    }
    if (dist >= cut) shell.push_back(f);
    for (int a = g->dim - 1; a >= 0; --a) {
      if (++idx[a] < g->n) break;
      idx[a] = 0;
    }
  }
  return shell;
}

double pair_combine(double a, double b, double q) {
  if (q == kInfiniteQ) return std::max(a, b);
  return std::pow(std::pow(a, q) + std::pow(b, q), 1.0 / q);
}

}  // namespace

RunResult run(const MHDState& s0, const SolverConfig& cfg, const RunOptions& opts,
              NormSeries& out) {
  const Grid& g = s0.grid();
  if (g->dim != 2 && g->dim != 3)
    throw std::invalid_argument("time evolution is limited to 2 or 3 dimensions");
  if (opts.record_every < 1) throw std::invalid_argument("record_every must be at least 1");
  const double span = opts.t_end - s0.t;
  if (!(span >= 0.0)) throw std::invalid_argument("t_end lies before the initial time");
  const long n_steps = std::lround(span / cfg.dt);
  if (std::abs(static_cast<double>(n_steps) * cfg.dt - span) >
      1e-9 * std::max(1.0, std::abs(opts.t_end)))
    throw std::invalid_argument("t_end - t0 must be a whole number of time steps");

  out = NormSeries{};
  out.s_values = opts.s_list;
  out.q_values = opts.q_list;
  out.hs_cols.assign(opts.s_list.size(), {});
  out.lq_cols.assign(opts.q_list.size(), {});

  Stepper stepper(g, cfg);
  RunResult res;
  res.steps = n_steps;

  MHDState s{s0.u, s0.b, s0.t};
  remove_mean(s.u);
  remove_mean(s.b);

  std::vector<Index> shell;
  if (opts.track_wraparound) shell = edge_shell(g);

  double prev_t = s.t, prev_du = 0.0, prev_db = 0.0;
  double acc_u = 0.0, acc_b = 0.0;

  auto record = [&](long i) {
    if (!all_finite(s.u) || !all_finite(s.b))
      throw NumericalAbort(at_time("non-finite coefficients", s.t));
    if (std::max(max_coeff(s.u), max_coeff(s.b)) > 1e12)
      throw NumericalAbort(at_time("coefficient magnitude exceeded 1e12", s.t));

    const double l2u = hs_norm(s.u, 0.0), l2b = hs_norm(s.b, 0.0);
    const double h1u = hs_norm(s.u, 1.0), h1b = hs_norm(s.b, 1.0);
    const double du = 2.0 * cfg.mu * h1u * h1u;
    const double db = 2.0 * cfg.nu * h1b * h1b;
    if (!out.t.empty()) {
      acc_u += 0.5 * (prev_du + du) * (s.t - prev_t);
      acc_b += 0.5 * (prev_db + db) * (s.t - prev_t);
    }
    prev_t = s.t;
    prev_du = du;
    prev_db = db;

    out.t.push_back(s.t);
    out.l2_pair.push_back(std::sqrt(l2u * l2u + l2b * l2b));
    out.h1_pair.push_back(std::sqrt(h1u * h1u + h1b * h1b));
    for (std::size_t j = 0; j < opts.s_list.size(); ++j) {
      const double a = hs_norm(s.u, opts.s_list[j]), b = hs_norm(s.b, opts.s_list[j]);
      out.hs_cols[j].push_back(std::sqrt(a * a + b * b));
    }
    for (std::size_t j = 0; j < opts.q_list.size(); ++j) {
      const double q = opts.q_list[j];
      out.lq_cols[j].push_back(pair_combine(lq_norm(s.u, q), lq_norm(s.b, q), q));
    }
    out.diss_u_acc.push_back(acc_u);
    out.diss_b_acc.push_back(acc_b);

    if (opts.track_wraparound && res.wraparound_time < 0.0) {
      ArrayXr amp2 = ArrayXr::Zero(g->mode_count);
      for (int c = 0; c < g->dim; ++c) {
        amp2 += inverse(s.u.comp[c]).square();
        amp2 += inverse(s.b.comp[c]).square();
      }
      const double global = amp2.maxCoeff();
      double edge = 0.0;
      for (Index f : shell) edge = std::max(edge, amp2[f]);
      if (global > 0.0 && std::sqrt(edge) > 1e-8 * std::sqrt(global))
        res.wraparound_time = s.t;
    }
    if (opts.on_snapshot) opts.on_snapshot(s, i);
  };

  record(0);
  for (long i = 1; i <= n_steps; ++i) {
    if (cfg.integrator == Integrator::if_rk4) {
      stepper.step(s);
    } else {
      DuhamelOptions d;
      d.mu = cfg.mu;
      d.nu = cfg.nu;
      d.picard_iters = cfg.picard_iters;
      d.quad_panels = cfg.quad_panels;
      d.dealias = cfg.dealias;
      d.nonlinear = cfg.nonlinear;
      s = duhamel_solve(s, cfg.dt, d).final_state;
    }
    s.t = s0.t + static_cast<double>(i) * cfg.dt;
    if (i % opts.record_every == 0 || i == n_steps) record(i);
  }

  res.final_state = std::move(s);
  return res;
}

}  // namespace mhdk
