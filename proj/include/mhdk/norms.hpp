#pragma once

#include <limits>
#include <string>

#include "mhdk/spectral_field.hpp"

namespace mhdk {

// Shared result shape for two-sided norm comparisons. `ratio` is lhs/rhs;
// `degenerate` marks a vanishing right-hand side (ratio reported as 0).
struct InequalityReport {
  std::string case_id;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool degenerate = false;
};

inline constexpr double kInfiniteQ = std::numeric_limits<double>::infinity();

// Norm conventions. The transform is coefficient-normalized (zero mode = mean),
// so the discrete Parseval identity reads  integral |f|^2 dx = L^dim * sum_k |c(k)|^2.
// Every norm below therefore carries the box volume L^dim as its norm factor,
// which makes lattice sums of sampled continuum spectra converge to the
// corresponding continuum integrals.

// Homogeneous Sobolev norm: sqrt( L^dim * sum_k |k|^{2s} sum_i |c_i(k)|^2 ).
// For s != 0 the zero mode carries weight zero (homogeneous norms see only the
// mean-free part); s = 0 is the plain L2 norm, mean included.
double hs_norm(const VectorField& f, double s);
// Pair norm: square root of the sum of the two squared norms.
double hs_norm(const PairField& f, double s);

// Lebesgue norm over the box with the rectangle rule on the grid samples,
// components summed inside the q-th power:  ( sum_i integral |f_i|^q dx )^{1/q}.
// q = infinity is the max over components of the sampled sup. q < 2 is rejected.
double lq_norm(const VectorField& f, double q);
// Pair rule: ( ||u||_q^q + ||b||_q^q )^{1/q}; max of the sups for q = infinity.
double lq_norm(const PairField& f, double q);

// Norm of the full m-th derivative tensor: the q-th powers of all ordered
// multi-index derivatives D_{j1} ... D_{jm} f_i are summed (sup over all of
// them for q = infinity). For q = 2 this reproduces hs_norm(f, m) by the
// multinomial identity sum_{j1..jm} k_{j1}^2 ... k_{jm}^2 = |k|^{2m}; the
// implementation still evaluates it through physical samples so the identity
// is a genuine cross-check of the transform pipeline.
double dm_lq_norm(const VectorField& f, int m, double q);
double dm_lq_norm(const PairField& f, int m, double q);

// Fourier-side interpolation ||D^l f||_2 <= ||f||_2^{1-l/m} ||D^m f||_2^{l/m}
// for 0 <= l <= m. Exact Hoelder on the mode sums, so the returned ratio can
// exceed 1 only by rounding.
InequalityReport interpolation_check(const VectorField& f, int l, int m);
InequalityReport interpolation_check(const PairField& f, int l, int m);

}  // namespace mhdk
