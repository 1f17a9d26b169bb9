#pragma once

#include <cstdint>

#include "mhdk/spectral_field.hpp"

namespace mhdk {

// Shape of the random spectra used for ensembles and the random_band initial
// data: independent complex Gaussians on every mode with 0 < max_j |m_j| <=
// band, scaled by |k|^{-slope}, then Hermitian-symmetrized so the field is
// real-valued. Keeping 4*band < n makes the rectangle rule exact for fourth
// powers of these fields, so L4 norms carry no aliasing error.
struct BandSpec {
  int band = 0;  // 0 picks the default min((n-1)/4, 8)
  double slope = 1.0;
};

int effective_band(const Grid& g, const BandSpec& spec);

// Deterministic in (seed, sample_index) only, so ensemble results do not
// depend on how samples are spread over workers. Mean-zero by construction;
// solenoidal applies a Leray projection per field.
VectorField random_field(const Grid& g, const BandSpec& spec, uint64_t seed,
                         uint64_t sample_index, bool solenoidal);

// Solenoidal (u, b) pair drawn from one stream, normalized so the pair L2
// norm equals `amplitude`.
PairField random_solenoidal_pair(const Grid& g, const BandSpec& spec, uint64_t seed,
                                 uint64_t sample_index, double amplitude = 1.0);

}  // namespace mhdk
