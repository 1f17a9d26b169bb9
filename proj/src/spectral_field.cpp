#include "mhdk/spectral_field.hpp"

#include <algorithm>
#include <cmath>

namespace mhdk {

SpectralField zero_field(const Grid& g) {
  return SpectralField{g, ArrayXc::Zero(g->mode_count)};
}

VectorField zero_vector_field(const Grid& g) {
  VectorField v;
  v.comp.reserve(g->dim);
  for (int i = 0; i < g->dim; ++i) v.comp.push_back(zero_field(g));
  return v;
}

bool all_finite(const SpectralField& f) { return f.c.allFinite(); }

bool all_finite(const VectorField& f) {
  return std::all_of(f.comp.begin(), f.comp.end(),
                     [](const SpectralField& s) { return all_finite(s); });
}

bool all_finite(const PairField& f) { return all_finite(f.u) && all_finite(f.b); }

double hermitian_defect(const SpectralField& f) {
  const ArrayXi& conj_index = f.grid->conj_index;
  double worst = 0.0;
  for (Index i = 0; i < f.c.size(); ++i) {
    const Complex d = f.c[i] - std::conj(f.c[conj_index[i]]);
    worst = std::max(worst, std::abs(d));
  }
  return worst;
}

double hermitian_defect(const VectorField& f) {
  double worst = 0.0;
  for (const auto& s : f.comp) worst = std::max(worst, hermitian_defect(s));
  return worst;
}

double max_coeff(const VectorField& f) {
  double worst = 0.0;
  for (const auto& s : f.comp) worst = std::max(worst, s.c.abs().maxCoeff());
  return worst;
}

}  // namespace mhdk
