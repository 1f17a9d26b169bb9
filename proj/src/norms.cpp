#include "mhdk/norms.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mhdk/transforms.hpp"

namespace mhdk {
namespace {

// |a|^q elementwise, with fast paths for the small integer exponents the
// norms actually use in hot loops.
ArrayXr abs_pow(const ArrayXr& a, double q) {
  if (q == 2.0) return a.square();
  if (q == 4.0) return a.square().square();
  if (q == 6.0) return a.square().cube();
  double qi;
  if (std::modf(q, &qi) == 0.0 && q > 0.0 && q <= 32.0) {
    const int p = static_cast<int>(q);
    return a.unaryExpr([p](double x) {
      double ax = std::fabs(x), r = 1.0;
      for (int i = 0; i < p; ++i) r *= ax;
      return r;
    });
  }
  return a.abs().pow(q);
}

double hs_sq(const VectorField& f, double s) {
  if (!(s >= 0.0)) throw std::invalid_argument("Sobolev order must be >= 0");
  const Grid& g = f.grid();
  ArrayXr amp2 = ArrayXr::Zero(g->mode_count);
  for (const auto& c : f.comp) amp2 += c.c.abs2();
  if (s == 0.0) return g->volume() * amp2.sum();
  double si;
  if (std::modf(s, &si) == 0.0 && s > 0.0 && s <= 16.0) {
    const int p = static_cast<int>(s);
    for (int i = 0; i < p; ++i) amp2 *= g->ksq;
    return g->volume() * amp2.sum();
  }
  // Non-integer order: the zero mode carries weight zero (homogeneous norm).
  ArrayXr w = (g->ksq > 0.0).select(g->ksq.pow(s), ArrayXr::Zero(g->mode_count));
  return g->volume() * (w * amp2).sum();
}

void require_q(double q) {
  if (!(q >= 2.0))
    throw std::invalid_argument("lq norms are defined here for q in [2, inf] only");
}

// Accumulators shared by the single-field and pair entry points: for finite q
// the sum of integral |f_i|^q over components, for q = inf the max of the sups.
double lq_acc(const VectorField& f, double q) {
  const Grid& g = f.grid();
  double acc = 0.0;
  for (const auto& c : f.comp) {
    ArrayXr samples = inverse(SpectralField{g, c.c});
    if (q == kInfiniteQ)
      acc = std::max(acc, samples.abs().maxCoeff());
    else
      acc += g->cell_volume() * abs_pow(samples, q).sum();
  }
  return acc;
}

int factorial(int n) {
  int r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

void enumerate_multisets(int dim, int m, int axis, std::array<int, 4>& alpha,
                         std::vector<std::array<int, 4>>& out) {
  if (axis == dim - 1) {
    alpha[axis] = m;
    out.push_back(alpha);
    return;
  }
  for (int take = 0; take <= m; ++take) {
    alpha[axis] = take;
    enumerate_multisets(dim, m - take, axis + 1, alpha, out);
  }
}

double dm_lq_acc(const VectorField& f, int m, double q) {
  const Grid& g = f.grid();
  std::vector<std::array<int, 4>> alphas;
  std::array<int, 4> scratch{};
  enumerate_multisets(g->dim, m, 0, scratch, alphas);

  // i^m as an explicit complex phase; the sign pattern of prod k_j^{alpha_j}
  // stays in the real multiplier.
  static const Complex phases[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const Complex phase = phases[m % 4];

  double acc = 0.0;
  for (const auto& alpha : alphas) {
    ArrayXr kp = ArrayXr::Ones(g->mode_count);
    int mult = factorial(m);
    for (int a = 0; a < g->dim; ++a) {
      for (int r = 0; r < alpha[a]; ++r) kp *= g->k[a];
      mult /= factorial(alpha[a]);
    }
    for (const auto& c : f.comp) {
      SpectralField dc{g, c.c * kp.cast<Complex>() * phase};
      ArrayXr samples = inverse(dc);
      if (q == kInfiniteQ)
        acc = std::max(acc, samples.abs().maxCoeff());
      else
        acc += mult * g->cell_volume() * abs_pow(samples, q).sum();
    }
  }
  return acc;
}

InequalityReport interpolation_report(double n0, double nl, double nm, int l, int m) {
  InequalityReport r;
  r.case_id = "interpolation(l=" + std::to_string(l) + ",m=" + std::to_string(m) + ")";
  const double theta = static_cast<double>(l) / m;
  r.lhs = nl;
  r.rhs = std::pow(n0, 1.0 - theta) * std::pow(nm, theta);
  if (r.rhs == 0.0) {
    r.degenerate = true;
    r.ratio = 0.0;
  } else {
    r.ratio = r.lhs / r.rhs;
  }
  return r;
}

void require_lm(int l, int m) {
  if (m < 1 || l < 0 || l > m)
    throw std::invalid_argument("interpolation orders need 0 <= l <= m and m >= 1");
}

}  // namespace

double hs_norm(const VectorField& f, double s) { return std::sqrt(hs_sq(f, s)); }

double hs_norm(const PairField& f, double s) {
  return std::sqrt(hs_sq(f.u, s) + hs_sq(f.b, s));
}

double lq_norm(const VectorField& f, double q) {
  require_q(q);
  const double acc = lq_acc(f, q);
  return q == kInfiniteQ ? acc : std::pow(acc, 1.0 / q);
}

double lq_norm(const PairField& f, double q) {
  require_q(q);
  const double au = lq_acc(f.u, q);
  const double ab = lq_acc(f.b, q);
  return q == kInfiniteQ ? std::max(au, ab) : std::pow(au + ab, 1.0 / q);
}

double dm_lq_norm(const VectorField& f, int m, double q) {
  require_q(q);
  if (m < 0) throw std::invalid_argument("derivative order must be >= 0");
  if (m == 0) return lq_norm(f, q);
  const double acc = dm_lq_acc(f, m, q);
  return q == kInfiniteQ ? acc : std::pow(acc, 1.0 / q);
}

double dm_lq_norm(const PairField& f, int m, double q) {
  require_q(q);
  if (m < 0) throw std::invalid_argument("derivative order must be >= 0");
  if (m == 0) return lq_norm(f, q);
  const double au = dm_lq_acc(f.u, m, q);
  const double ab = dm_lq_acc(f.b, m, q);
  return q == kInfiniteQ ? std::max(au, ab) : std::pow(au + ab, 1.0 / q);
}

InequalityReport interpolation_check(const VectorField& f, int l, int m) {
  require_lm(l, m);
  return interpolation_report(hs_norm(f, 0), hs_norm(f, l), hs_norm(f, m), l, m);
}

InequalityReport interpolation_check(const PairField& f, int l, int m) {
  require_lm(l, m);
  return interpolation_report(hs_norm(f, 0), hs_norm(f, l), hs_norm(f, m), l, m);
}

}  // namespace mhdk
