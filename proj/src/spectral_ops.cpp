#include "mhdk/spectral_ops.hpp"

#include <cmath>
#include <stdexcept>

namespace mhdk {

SpectralField derivative(const SpectralField& f, int axis) {
  const Grid& g = f.grid;
  if (axis < 0 || axis >= g->dim)
    throw std::invalid_argument("derivative axis " + std::to_string(axis) +
                                " out of range for dim " + std::to_string(g->dim));
  SpectralField out{g, ArrayXc(g->mode_count)};
  const ArrayXr& k = g->k[axis];
  for (Index i = 0; i < g->mode_count; ++i)
    out.c[i] = Complex(-k[i] * f.c[i].imag(), k[i] * f.c[i].real());
  return out;
}

VectorField leray_project(const VectorField& v) {
  const Grid& g = v.grid();
  const int d = g->dim;
  if (v.dim() != d) throw std::invalid_argument("component count does not match grid dim");
  ArrayXc dot = ArrayXc::Zero(g->mode_count);
  for (int j = 0; j < d; ++j) dot += g->k[j].cast<Complex>() * v.comp[j].c;
  dot *= g->inv_ksq.cast<Complex>();  // zero at the zero mode, so it is untouched
  VectorField out = v;
  for (int j = 0; j < d; ++j) out.comp[j].c -= g->k[j].cast<Complex>() * dot;
  return out;
}

SpectralField dealias(const SpectralField& f) {
  SpectralField out{f.grid, f.c * f.grid->keep.cast<Complex>()};
  return out;
}

VectorField dealias(const VectorField& f) {
  VectorField out = f;
  for (auto& s : out.comp) s = dealias(s);
  return out;
}

double divergence_linf(const VectorField& v) {
  const Grid& g = v.grid();
  ArrayXc dot = ArrayXc::Zero(g->mode_count);
  for (int j = 0; j < g->dim; ++j) dot += g->k[j].cast<Complex>() * v.comp[j].c;
  return dot.abs().maxCoeff();
}

void remove_mean(VectorField& v) {
  for (auto& s : v.comp) s.c[0] = Complex(0.0, 0.0);
}

double inner_l2(const VectorField& f, const VectorField& g) {
  const Grid& gr = f.grid();
  if (g.grid() != gr) throw std::invalid_argument("inner product across different grids");
  double acc = 0.0;
  for (int j = 0; j < gr->dim; ++j)
    acc += (f.comp[j].c.conjugate() * g.comp[j].c).real().sum();
  return acc * gr->volume();
}

}  // namespace mhdk
