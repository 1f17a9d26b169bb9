#pragma once

#include <cmath>
#include <cstdint>

namespace mhdk {

// Counter-scrambled generator with an explicit substream index, so sample i of
// an ensemble draws the same values no matter how samples are distributed
// over workers. Gaussians use the trigonometric Box-Muller form, which
// consumes a fixed number of uniforms per call (no rejection), keeping the
// stream layout deterministic.
class Rng {
 public:
  Rng(uint64_t seed, uint64_t stream = 0)
      : state_(mix(mix(seed + 0x9E3779B97F4A7C15ull) ^ mix(stream + 0xBF58476D1CE4E5B9ull))) {}

  uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }

  // Uniform in (0, 1].
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 1.0) * 0x1p-53;
  }

  // Standard normal pair.
  void next_normal_pair(double& g1, double& g2) {
    const double u1 = next_uniform();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    g1 = r * std::cos(a);
    g2 = r * std::sin(a);
  }

 private:
  static uint64_t mix(uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  uint64_t state_;
};

}  // namespace mhdk
