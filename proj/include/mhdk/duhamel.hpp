#pragma once

#include <vector>

#include "mhdk/solver.hpp"

namespace mhdk {

struct DuhamelOptions {
  double mu = 1.0;
  double nu = 1.0;
  int picard_iters = 4;
  int quad_panels = 4;   // integral resolved on 2*quad_panels subintervals
  bool dealias = true;
  bool nonlinear = true;
};

struct DuhamelResult {
  MHDState final_state;
  std::vector<double> increments;  // pair L2 distance between successive iterates at the horizon
};

// Mild-solution form of the equations: starting from the pure heat-flow
// profile, Picard iterates
//   v^{p+1}(t) = e^{tA} v0 + integral_0^t e^{(t-s)A} N(v^p(s)) ds
// are evaluated on a uniform grid of 2*quad_panels nodes per horizon.  The
// integral up to an even node uses composite Simpson weights; up to an odd
// node >= 3 Simpson is closed with the 3/8 rule on the last three
// subintervals; the first node uses the third-order closed formula
// delta*(5 f_0 + 8 f_1 - f_2)/12, which borrows the node one step ahead.
// The endpoint (the full horizon) always lands on composite Simpson.
DuhamelResult duhamel_solve(const MHDState& s0, double horizon, const DuhamelOptions& opts);

}  // namespace mhdk
