#pragma once

#include <cstdint>
#include <string>

#include "mhdk/spectral_field.hpp"

namespace mhdk {

enum class InitKind { random_band, gaussian_localized, orszag_tang };

InitKind parse_init_kind(const std::string& name);
std::string init_kind_name(InitKind k);

struct InitConfig {
  InitKind kind = InitKind::random_band;
  double amplitude = 1.0;  // random_band: pair L2 norm; others: profile scale
  uint64_t seed = 0;       // random_band only
  int band = 0;            // random_band only; 0 = default band
  double slope = 1.0;      // random_band only
  double sigma = 0.0;      // gaussian_localized width; 0 = box_length/32
};

// All recipes produce mean-zero, solenoidal, dealiased pairs.
//
// random_band: band-limited Gaussian spectra (see random_fields), pair L2
// normalized to `amplitude`.
//
// gaussian_localized: a Gaussian envelope psi centered at box_length/2 enters
// through the antisymmetric potential u = (d2 psi, -d1 psi, 0, ...), which is
// divergence-free in every dimension and keeps Gaussian (not algebraic) tails,
// so boundary-shell wraparound detection stays meaningful. b uses the same
// construction with the envelope shifted by sigma along axis 0.
//
// orszag_tang: the classic 2D vortex u = A(-sin y', sin x'),
// b = A(-sin y', sin 2x') with x' = 2 pi x / L; dim must be 2.
PairField make_initial_pair(const Grid& g, const InitConfig& cfg);

}  // namespace mhdk
