#pragma once

#include "mhdk/spectral_field.hpp"

namespace mhdk {

// d/dx_axis as the multiplier i*k_axis.
SpectralField derivative(const SpectralField& f, int axis);

// Orthogonal projection onto divergence-free fields:
// v(k) <- v(k) - k (k.v(k)) / |k|^2, with the zero mode left unchanged.
VectorField leray_project(const VectorField& v);

// 2/3-rule truncation: zero every coefficient with 3|m_j| > n for any axis.
SpectralField dealias(const SpectralField& f);
VectorField dealias(const VectorField& f);

// max_k |sum_j k_j v_j(k)|, the spectral divergence in the sup norm.
double divergence_linf(const VectorField& v);

// Force the zero mode (spatial mean) of every component to zero.
void remove_mean(VectorField& v);

// L2-type inner product sum_i Re <f_i, g_i> * volume (Parseval form).
double inner_l2(const VectorField& f, const VectorField& g);

}  // namespace mhdk
