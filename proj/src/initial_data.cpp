#include "mhdk/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "mhdk/norms.hpp"
#include "mhdk/random_fields.hpp"
#include "mhdk/spectral_ops.hpp"
#include "mhdk/transforms.hpp"

namespace mhdk {
namespace {

double wrap_distance(double x, double c, double length) {
  double d = std::fmod(x - c, length);
  if (d < -0.5 * length) d += length;
  if (d >= 0.5 * length) d -= length;
  return d;
}

ArrayXr gaussian_envelope(const Grid& g, const std::array<double, 4>& center, double sigma) {
  ArrayXr psi(g->mode_count);
  const double L = g->box_length;
  const double h = g->dx();
  std::array<int, 4> idx{};
  for (Index f = 0; f < g->mode_count; ++f) {
    double r2 = 0.0;
    for (int a = 0; a < g->dim; ++a) {
      const double d = wrap_distance(idx[a] * h, center[a], L);
      r2 += d * d;
    }
    psi[f] = std::exp(-0.5 * r2 / (sigma * sigma));
    for (int a = g->dim - 1; a >= 0; --a) {
      if (++idx[a] < g->n) break;
      idx[a] = 0;
    }
  }
  return psi;
}

// u = (d2 psi, -d1 psi, 0, ...): solenoidal by construction.
VectorField potential_flow(const Grid& g, const ArrayXr& psi_samples, double amplitude) {
  SpectralField psi = forward(g, psi_samples);
  psi.c *= amplitude;
  VectorField v = zero_vector_field(g);
  v.comp[0] = derivative(psi, 1);
  SpectralField d0 = derivative(psi, 0);
  d0.c = -d0.c;
  v.comp[1] = d0;
  return v;
}

PairField finalize(PairField p) {
  p.u = leray_project(dealias(p.u));
  p.b = leray_project(dealias(p.b));
  remove_mean(p.u);
  remove_mean(p.b);
  return p;
}

}  // namespace

InitKind parse_init_kind(const std::string& name) {
  if (name == "random_band") return InitKind::random_band;
  if (name == "gaussian_localized") return InitKind::gaussian_localized;
  if (name == "orszag_tang") return InitKind::orszag_tang;
  throw std::invalid_argument("unknown init recipe '" + name + "'");
}

std::string init_kind_name(InitKind k) {
  switch (k) {
    case InitKind::random_band: return "random_band";
    case InitKind::gaussian_localized: return "gaussian_localized";
    case InitKind::orszag_tang: return "orszag_tang";
  }
  return "?";
}

PairField make_initial_pair(const Grid& g, const InitConfig& cfg) {
  if (!(cfg.amplitude > 0.0)) throw std::invalid_argument("init amplitude must be positive");
  switch (cfg.kind) {
    case InitKind::random_band: {
      BandSpec spec{cfg.band, cfg.slope};
      return finalize(random_solenoidal_pair(g, spec, cfg.seed, 0, cfg.amplitude));
    }
    case InitKind::gaussian_localized: {
      const double L = g->box_length;
      const double sigma = cfg.sigma > 0.0 ? cfg.sigma : L / 32.0;
      if (sigma < 2.0 * g->dx())
        throw std::invalid_argument("gaussian width is below two grid cells");
      std::array<double, 4> cu{}, cb{};
      for (int a = 0; a < g->dim; ++a) cu[a] = cb[a] = 0.5 * L;
      cb[0] += sigma;
      PairField p{potential_flow(g, gaussian_envelope(g, cu, sigma), cfg.amplitude),
                  potential_flow(g, gaussian_envelope(g, cb, sigma), cfg.amplitude)};
      return finalize(std::move(p));
    }
    case InitKind::orszag_tang: {
      if (g->dim != 2)
        throw std::invalid_argument("orszag_tang initial data is two-dimensional");
      const double w = 2.0 * M_PI / g->box_length;
      const double h = g->dx();
      ArrayXr u1(g->mode_count), u2(g->mode_count), b1(g->mode_count), b2(g->mode_count);
      for (Index f = 0; f < g->mode_count; ++f) {
        const Index i = f / g->n;
        const Index j = f % g->n;
        const double x = i * h, y = j * h;
        u1[f] = -cfg.amplitude * std::sin(w * y);
        u2[f] = cfg.amplitude * std::sin(w * x);
        b1[f] = -cfg.amplitude * std::sin(w * y);
        b2[f] = cfg.amplitude * std::sin(2.0 * w * x);
      }
      PairField p{zero_vector_field(g), zero_vector_field(g)};
      p.u.comp[0] = forward(g, u1);
      p.u.comp[1] = forward(g, u2);
      p.b.comp[0] = forward(g, b1);
      p.b.comp[1] = forward(g, b2);
      return finalize(std::move(p));
    }
  }
  throw std::logic_error("unhandled init kind");
}

}  // namespace mhdk
