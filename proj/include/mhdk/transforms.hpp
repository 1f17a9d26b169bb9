#pragma once

#include "mhdk/spectral_field.hpp"

namespace mhdk {

// Forward transform of real samples (flat, row-major, axis 0 slowest).
// Normalized so that the zero mode equals the spatial mean.
SpectralField forward(const Grid& g, const ArrayXr& samples);

// Inverse transform to real samples. Coefficients are taken to be Hermitian
// (the transform of a real field); only the closed half spectrum is read and
// the mirror half is implied.
ArrayXr inverse(const SpectralField& f);

}  // namespace mhdk
