#include <cmath>
#include <stdexcept>

#include "mhdk/fourier_grid.hpp"
#include "mhdk/random_fields.hpp"
#include "mhdk/rng.hpp"
#include "mhdk/spectral_field.hpp"
#include "mhdk/spectral_ops.hpp"
#include "mhdk/transforms.hpp"
#include "testkit.hpp"

using namespace mhdk;

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

ArrayXr random_samples(const Grid& g, uint64_t seed) {
  Rng rng(seed);
  ArrayXr v(g->mode_count);
  for (Index i = 0; i + 1 < g->mode_count; i += 2) {
    double a, b;
    rng.next_normal_pair(a, b);
    v[i] = a;
    v[i + 1] = b;
  }
  if (g->mode_count % 2) v[g->mode_count - 1] = 0.4;
  return v;
}

void test_make_grid_validation() {
  REQUIRE_THROWS(make_grid(1, 16, 1.0), std::invalid_argument, "dim 1 rejected");
  REQUIRE_THROWS(make_grid(5, 16, 1.0), std::invalid_argument, "dim 5 rejected");
  REQUIRE_THROWS(make_grid(2, 12, 1.0), std::invalid_argument, "non power of two rejected");
  REQUIRE_THROWS(make_grid(2, 4, 1.0), std::invalid_argument, "n below 8 rejected");
  REQUIRE_THROWS(make_grid(2, 16, 0.0), std::invalid_argument, "zero box rejected");
  REQUIRE_THROWS(make_grid(2, 16, -2.0), std::invalid_argument, "negative box rejected");
  pass("make_grid validation");
}

void test_grid_tables() {
  const Grid g = make_grid(3, 16, 5.0);
  REQUIRE(g->mode_count == 16 * 16 * 16, "mode count");
  REQUIRE(g->stride[0] == 256 && g->stride[1] == 16 && g->stride[2] == 1, "row-major strides");

  // flat() and the mode tables agree, frequencies run 0..7, -8..-1.
  const Index f = g->flat({3, -5, 7, 0});
  REQUIRE(g->mode[0][f] == 3 && g->mode[1][f] == -5 && g->mode[2][f] == 7, "flat/mode roundtrip");
  REQUIRE_REL(g->k[1][f], kTwoPi * -5 / 5.0, 1e-15, "wavenumber scaling");
  REQUIRE_REL(g->ksq[f], g->k[0][f] * g->k[0][f] + g->k[1][f] * g->k[1][f] + g->k[2][f] * g->k[2][f],
              1e-15, "ksq consistency");

  // conj_index is an involution pairing m with -m.
  const Index fc = g->conj_index[f];
  REQUIRE(g->mode[0][fc] == -3 && g->mode[1][fc] == 5 && g->mode[2][fc] == -7, "conjugate mode");
  REQUIRE(g->conj_index[fc] == f, "conjugation involution");

  // 2/3 mask: |m| = 5 keeps (15 <= 16), |m| = 6 drops (18 > 16).
  REQUIRE(g->keep[g->flat({5, 0, 0, 0})] == 1.0, "mode 5 kept");
  REQUIRE(g->keep[g->flat({6, 0, 0, 0})] == 0.0, "mode 6 dropped");
  REQUIRE(g->inv_ksq[0] == 0.0, "zero mode has no inverse Laplacian");
  REQUIRE_REL(g->volume(), 125.0, 1e-15, "volume");
  REQUIRE_REL(g->cell_volume(), std::pow(5.0 / 16, 3), 1e-15, "cell volume");
  pass("grid mode tables");
}

void test_roundtrip_and_parseval() {
  for (int dim : {2, 3, 4}) {
    const int n = dim == 2 ? 32 : dim == 3 ? 16 : 8;
    const Grid g = make_grid(dim, n, 3.7);
    const ArrayXr samples = random_samples(g, 11 + dim);
    const SpectralField f = forward(g, samples);

    REQUIRE_REL(f.c[0].real(), samples.mean(), 1e-12, "zero mode is the mean");
    REQUIRE(hermitian_defect(f) <= 1e-12, "transform of real samples is Hermitian");

    const ArrayXr back = inverse(f);
    REQUIRE((back - samples).abs().maxCoeff() <= 1e-12 * samples.abs().maxCoeff(),
            "forward/inverse roundtrip");

    // Parseval under the coefficient normalization:
    //   integral f^2 dx = L^dim sum |c|^2, rectangle rule on the left.
    const double lhs = samples.square().sum() * g->cell_volume();
    const double rhs = f.c.abs2().sum() * g->volume();
    REQUIRE_REL(lhs, rhs, 1e-12, "Parseval identity");
  }
  pass("roundtrip + Parseval in dims 2, 3, 4");
}

void test_single_mode_coefficients() {
  const Grid g = make_grid(2, 32, kTwoPi);
  ArrayXr samples(g->mode_count);
  const double h = g->dx();
  for (Index i = 0; i < g->mode_count; ++i) {
    const double x = (i / 32) * h, y = (i % 32) * h;
    samples[i] = 2.0 * std::cos(3 * x) - 4.0 * std::sin(2 * y);
  }
  const SpectralField f = forward(g, samples);
  // cos -> 1/2 at +/-k, sin -> -+ i/2.
  REQUIRE_NEAR(std::abs(f.c[g->flat({3, 0, 0, 0})] - Complex(1.0, 0.0)), 0.0, 1e-12, "cos mode +k");
  REQUIRE_NEAR(std::abs(f.c[g->flat({-3, 0, 0, 0})] - Complex(1.0, 0.0)), 0.0, 1e-12, "cos mode -k");
  REQUIRE_NEAR(std::abs(f.c[g->flat({0, 2, 0, 0})] - Complex(0.0, 2.0)), 0.0, 1e-12, "sin mode +k");
  REQUIRE_NEAR(std::abs(f.c[g->flat({0, -2, 0, 0})] - Complex(0.0, -2.0)), 0.0, 1e-12, "sin mode -k");
  pass("single-mode coefficients");
}

void test_derivative() {
  // Closed form: d/dx [sin(3x)cos(2y)] = 3 cos(3x)cos(2y), dy -> -2 sin(3x)sin(2y).
  const Grid g = make_grid(2, 32, kTwoPi);
  ArrayXr samples(g->mode_count), dx_ref(g->mode_count), dy_ref(g->mode_count);
  const double h = g->dx();
  for (Index i = 0; i < g->mode_count; ++i) {
    const double x = (i / 32) * h, y = (i % 32) * h;
    samples[i] = std::sin(3 * x) * std::cos(2 * y);
    dx_ref[i] = 3 * std::cos(3 * x) * std::cos(2 * y);
    dy_ref[i] = -2 * std::sin(3 * x) * std::sin(2 * y);
  }
  const SpectralField f = forward(g, samples);
  REQUIRE((inverse(derivative(f, 0)) - dx_ref).abs().maxCoeff() <= 1e-12, "d/dx closed form");
  REQUIRE((inverse(derivative(f, 1)) - dy_ref).abs().maxCoeff() <= 1e-12, "d/dy closed form");

  // Independent route: high-order centered differences on a fine grid beat
  // the sampled spectral derivative of a band-limited field to ~h^8.
  const Grid g2 = make_grid(2, 128, 1.0);
  const VectorField v = random_field(g2, BandSpec{3, 1.0}, 99, 0, false);
  const ArrayXr u = inverse(v.comp[0]);
  const ArrayXr du = inverse(derivative(v.comp[0], 1));
  const double hh = g2->dx();
  double worst = 0.0;
  for (Index i = 0; i < g2->mode_count; ++i) {
    const Index row = i - (i % 128);
    auto at = [&](Index j) { return u[row + ((i % 128) + j + 1024) % 128]; };
    const double fd = (-at(-4) / 280.0 + 4 * at(-3) / 105.0 - at(-2) / 5.0 + 4 * at(-1) / 5.0 -
                       4 * at(1) / 5.0 + at(2) / 5.0 - 4 * at(3) / 105.0 + at(4) / 280.0) /
                      -hh;
    worst = std::max(worst, std::abs(fd - du[i]));
  }
  REQUIRE(worst <= 1e-7 * du.abs().maxCoeff(), "spectral derivative matches 8th-order differences");
  pass("spectral derivative");
}

void test_leray_and_dealias() {
  const Grid g = make_grid(3, 16, kTwoPi);
  VectorField v = random_field(g, BandSpec{4, 0.5}, 5, 0, false);
  const VectorField p = leray_project(v);
  const double scale = std::sqrt(p.comp[0].c.abs2().sum() + p.comp[1].c.abs2().sum() +
                                 p.comp[2].c.abs2().sum());
  REQUIRE(divergence_linf(p) <= 1e-13 * scale, "projection kills divergence");

  // Idempotence and gradient annihilation.
  const VectorField pp = leray_project(p);
  double diff = 0.0;
  for (int i = 0; i < 3; ++i) diff = std::max(diff, (pp.comp[i].c - p.comp[i].c).abs().maxCoeff());
  REQUIRE(diff <= 1e-14 * scale, "projection idempotent");

  // grad(sin(x + 2y + z)) projects to zero.
  ArrayXr phi(g->mode_count);
  const double h = g->dx();
  for (Index i = 0; i < g->mode_count; ++i) {
    const double x = (i / 256) * h, y = ((i / 16) % 16) * h, z = (i % 16) * h;
    phi[i] = std::sin(x + 2 * y + z);
  }
  const SpectralField phis = forward(g, phi);
  VectorField grad;
  for (int i = 0; i < 3; ++i) grad.comp.push_back(derivative(phis, i));
  const VectorField pg = leray_project(grad);
  REQUIRE(max_coeff(pg) <= 1e-13, "gradient field projects to zero");

  // Zero mode survives projection untouched.
  VectorField with_mean = zero_vector_field(g);
  with_mean.comp[0].c[0] = Complex(0.7, 0.0);
  const VectorField pm = leray_project(with_mean);
  REQUIRE(pm.comp[0].c[0] == Complex(0.7, 0.0), "zero mode preserved");

  // Dealias zeroes exactly the masked modes.
  SpectralField s = zero_field(g);
  s.c[g->flat({6, 0, 0, 0})] = Complex(1, 1);
  s.c[g->flat({5, -5, 5, 0})] = Complex(2, 0);
  const SpectralField ds = dealias(s);
  REQUIRE(ds.c[g->flat({6, 0, 0, 0})] == Complex(0, 0), "high mode dropped");
  REQUIRE(ds.c[g->flat({5, -5, 5, 0})] == Complex(2, 0), "band mode kept");
  pass("Leray projection + dealias");
}

void test_random_fields() {
  const Grid g = make_grid(2, 64, kTwoPi);
  const VectorField v = random_field(g, BandSpec{0, 1.0}, 42, 7, true);
  REQUIRE(effective_band(g, BandSpec{0, 1.0}) == 8, "default band");
  REQUIRE(hermitian_defect(v) <= 1e-14, "random field is real-valued");
  REQUIRE(std::abs(v.comp[0].c[0]) == 0.0 && std::abs(v.comp[1].c[0]) == 0.0, "mean-zero");
  const double scale = std::sqrt(v.comp[0].c.abs2().sum() + v.comp[1].c.abs2().sum());
  REQUIRE(divergence_linf(v) <= 1e-13 * scale, "random field solenoidal");

  // Only modes inside the band are populated.
  bool outside = false;
  for (Index i = 0; i < g->mode_count; ++i) {
    const int mm = std::max(std::abs(g->mode[0][i]), std::abs(g->mode[1][i]));
    if (mm > 8 && (std::abs(v.comp[0].c[i]) > 0 || std::abs(v.comp[1].c[i]) > 0)) outside = true;
  }
  REQUIRE(!outside, "band truncation respected");

  // Deterministic in (seed, index); distinct indices decorrelate.
  const VectorField v2 = random_field(g, BandSpec{0, 1.0}, 42, 7, true);
  double diff = 0.0;
  for (int i = 0; i < 2; ++i) diff = std::max(diff, (v2.comp[i].c - v.comp[i].c).abs().maxCoeff());
  REQUIRE(diff == 0.0, "same (seed, index) reproduces bitwise");
  const VectorField v3 = random_field(g, BandSpec{0, 1.0}, 42, 8, true);
  REQUIRE((v3.comp[0].c - v.comp[0].c).abs().maxCoeff() > 1e-3, "different index differs");

  const PairField p = random_solenoidal_pair(g, BandSpec{0, 1.0}, 1, 0, 0.25);
  const double l2sq = (p.u.comp[0].c.abs2() + p.u.comp[1].c.abs2() + p.b.comp[0].c.abs2() +
                       p.b.comp[1].c.abs2()).sum() * g->volume();
  REQUIRE_REL(std::sqrt(l2sq), 0.25, 1e-12, "pair amplitude normalization");

  REQUIRE_THROWS(random_field(g, BandSpec{40, 1.0}, 1, 0, true), std::invalid_argument,
                 "band beyond the dealias range rejected");
  pass("random band fields");
}

void test_remove_mean_and_inner() {
  const Grid g = make_grid(2, 16, 2.0);
  VectorField v = random_field(g, BandSpec{2, 0.0}, 3, 1, false);
  v.comp[0].c[0] = Complex(1.5, 0.0);
  remove_mean(v);
  REQUIRE(std::abs(v.comp[0].c[0]) == 0.0, "mean removed");

  // inner_l2(f, f) equals the Parseval L2 norm squared.
  const double ip = inner_l2(v, v);
  const double direct = (v.comp[0].c.abs2() + v.comp[1].c.abs2()).sum() * g->volume();
  REQUIRE_REL(ip, direct, 1e-13, "inner product normalization");
  pass("remove_mean + inner product");
}

}  // namespace

int main() {
  test_make_grid_validation();
  test_grid_tables();
  test_roundtrip_and_parseval();
  test_single_mode_coefficients();
  test_derivative();
  test_leray_and_dealias();
  test_random_fields();
  test_remove_mean_and_inner();
  std::cout << "test_grid_spectral: all sections passed\n";
  return 0;
}
