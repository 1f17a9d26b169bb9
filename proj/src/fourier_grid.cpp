#include "mhdk/fourier_grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mhdk {

double FourierGrid::volume() const { return std::pow(box_length, dim); }

double FourierGrid::cell_volume() const { return std::pow(box_length / n, dim); }

Index FourierGrid::flat(const std::array<int, 4>& m_int) const {
  Index f = 0;
  for (int a = 0; a < dim; ++a) {
    int m = m_int[a];
    int i = m >= 0 ? m : m + n;
    if (i < 0 || i >= n)
      throw std::invalid_argument("mode frequency " + std::to_string(m) +
                                  " out of range for n=" + std::to_string(n));
    f += stride[a] * i;
  }
  return f;
}

Grid make_grid(int dim, int points_per_axis, double box_length) {
  if (dim < 2 || dim > 4)
    throw std::invalid_argument("grid dim must be 2, 3 or 4, got " + std::to_string(dim));
  const int n = points_per_axis;
  if (n < 8 || (n & (n - 1)) != 0)
    throw std::invalid_argument("points_per_axis must be a power of two >= 8, got " +
                                std::to_string(n));
  if (!(box_length > 0.0) || !std::isfinite(box_length))
    throw std::invalid_argument("box_length must be positive and finite");

  auto g = std::make_shared<FourierGrid>();
  g->dim = dim;
  g->n = n;
  g->box_length = box_length;

  Index count = 1;
  for (int a = 0; a < dim; ++a) count *= n;
  g->mode_count = count;
  g->stride[dim - 1] = 1;
  for (int a = dim - 2; a >= 0; --a) g->stride[a] = g->stride[a + 1] * n;

  for (int a = 0; a < dim; ++a) {
    g->mode[a].resize(count);
    g->k[a].resize(count);
  }
  g->ksq.resize(count);
  g->inv_ksq.resize(count);
  g->keep.resize(count);
  g->conj_index.resize(count);

  const double k0 = 2.0 * M_PI / box_length;
  std::array<int, 4> idx{};  // odometer over grid positions, axis 0 slowest
  for (Index f = 0; f < count; ++f) {
    double s = 0.0;
    bool kept = true;
    Index mirror = 0;
    for (int a = 0; a < dim; ++a) {
      const int i = idx[a];
      const int m = i < n / 2 ? i : i - n;
      const double kj = k0 * m;
      g->mode[a][f] = m;
      g->k[a][f] = kj;
      s += kj * kj;
      if (3 * std::abs(m) > n) kept = false;
      mirror += g->stride[a] * ((n - i) % n);
    }
    g->ksq[f] = s;
    g->inv_ksq[f] = s > 0.0 ? 1.0 / s : 0.0;
    g->keep[f] = kept ? 1.0 : 0.0;
    g->conj_index[f] = static_cast<int>(mirror);

    for (int a = dim - 1; a >= 0; --a) {
      if (++idx[a] < n) break;
      idx[a] = 0;
    }
  }
  return g;
}

}  // namespace mhdk
