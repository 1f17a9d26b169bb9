#pragma once

#include <string>

#include "mhdk/solver.hpp"

namespace mhdk {

struct Checkpoint {
  MHDState state;
  double mu = 0.0;
  double nu = 0.0;
};

// Binary state dump: magic "MHDK", format version u32 (currently 1), then
// u32 dim, u32 points_per_axis, f64 box_length, t, mu, nu, then the raw
// coefficient blocks for u then b, component-major, each coefficient as two
// little-endian f64 (re, im). Roundtrips bit-exactly.
void write_checkpoint(const std::string& path, const MHDState& s, double mu, double nu);
Checkpoint read_checkpoint(const std::string& path);

}  // namespace mhdk
