#pragma once

#include <vector>

#include "mhdk/fourier_grid.hpp"

namespace mhdk {

// A scalar field held as Fourier coefficients on its grid. The convention is
// coefficient-normalized: c[0] is the spatial mean of the field, and the
// spatial samples are f(x) = sum_k c(k) exp(i k.x).
struct SpectralField {
  Grid grid;
  ArrayXc c;
};

SpectralField zero_field(const Grid& g);

// One coefficient array per spatial component.
struct VectorField {
  std::vector<SpectralField> comp;

  const Grid& grid() const { return comp.front().grid; }
  int dim() const { return static_cast<int>(comp.size()); }
};

VectorField zero_vector_field(const Grid& g);

// Velocity/magnetic pair sharing one grid.
struct PairField {
  VectorField u;
  VectorField b;

  const Grid& grid() const { return u.grid(); }
};

bool all_finite(const SpectralField& f);
bool all_finite(const VectorField& f);
bool all_finite(const PairField& f);

// Largest |c(k) - conj(c(-k))| over all modes; zero for a real-valued field.
double hermitian_defect(const SpectralField& f);
double hermitian_defect(const VectorField& f);

// Largest coefficient magnitude.
double max_coeff(const VectorField& f);

}  // namespace mhdk
