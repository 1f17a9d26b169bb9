#include "mhdk/random_fields.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "mhdk/norms.hpp"
#include "mhdk/rng.hpp"
#include "mhdk/spectral_ops.hpp"

namespace mhdk {
namespace {

// Everything outside the band is exactly zero, so drawing, symmetrizing and
// projecting all touch only this list. Cached per (dim, n, band) since
// ensembles regenerate thousands of same-shaped fields, possibly from
// several worker threads at once.
const std::vector<Index>& band_modes(const Grid& g, int band) {
  static std::map<std::tuple<int, int, int>, std::vector<Index>> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find({g->dim, g->n, band});
  if (it != cache.end()) return it->second;

  std::vector<Index> idx;
  for (Index f = 0; f < g->mode_count; ++f) {
    bool inside = true, zero = true;
    for (int a = 0; a < g->dim; ++a) {
      const int m = g->mode[a][f];
      if (std::abs(m) > band) inside = false;
      if (m != 0) zero = false;
    }
    if (inside && !zero) idx.push_back(f);
  }
  return cache.emplace(std::make_tuple(g->dim, g->n, band), std::move(idx)).first->second;
}

VectorField draw(const Grid& g, const BandSpec& spec, Rng& rng, bool solenoidal) {
  const int band = effective_band(g, spec);
  const std::vector<Index>& modes = band_modes(g, band);
  VectorField v = zero_vector_field(g);
  std::vector<double> amp(modes.size());
  for (std::size_t i = 0; i < modes.size(); ++i)
    amp[i] = std::pow(g->ksq[modes[i]], -0.5 * spec.slope);
  std::vector<Complex> sym(modes.size());
  for (int comp = 0; comp < g->dim; ++comp) {
    ArrayXc& c = v.comp[comp].c;
    for (std::size_t i = 0; i < modes.size(); ++i) {
      double g1, g2;
      rng.next_normal_pair(g1, g2);
      c[modes[i]] = Complex(g1, g2) * amp[i];
    }
    // Hermitian-symmetrize; the mirror of a band mode is a band mode.
    for (std::size_t i = 0; i < modes.size(); ++i) {
      const Index f = modes[i];
      sym[i] = 0.5 * (c[f] + std::conj(c[g->conj_index[f]]));
    }
    for (std::size_t i = 0; i < modes.size(); ++i) c[modes[i]] = sym[i];
  }
  if (solenoidal) {
    for (const Index f : modes) {
      Complex dot(0.0, 0.0);
      for (int j = 0; j < g->dim; ++j) dot += g->k[j][f] * v.comp[j].c[f];
      dot *= g->inv_ksq[f];
      for (int j = 0; j < g->dim; ++j) v.comp[j].c[f] -= g->k[j][f] * dot;
    }
  }
  return v;
}

}  // namespace

int effective_band(const Grid& g, const BandSpec& spec) {
  const int fallback = std::min((g->n - 1) / 4, 8);
  const int band = spec.band > 0 ? spec.band : fallback;
  if (band < 1 || 3 * band > g->n)
    throw std::invalid_argument("band must lie within the dealiased range (3*band <= n)");
  return band;
}

VectorField random_field(const Grid& g, const BandSpec& spec, uint64_t seed,
                         uint64_t sample_index, bool solenoidal) {
  Rng rng(seed, sample_index);
  return draw(g, spec, rng, solenoidal);
}

PairField random_solenoidal_pair(const Grid& g, const BandSpec& spec, uint64_t seed,
                                 uint64_t sample_index, double amplitude) {
  Rng rng(seed, sample_index);
  PairField p{draw(g, spec, rng, true), draw(g, spec, rng, true)};
  const double norm = hs_norm(p, 0.0);
  if (norm > 0.0) {
    const double scale = amplitude / norm;
    for (auto& s : p.u.comp) s.c *= scale;
    for (auto& s : p.b.comp) s.c *= scale;
  }
  return p;
}

}  // namespace mhdk
