#pragma once

#include <array>
#include <complex>
#include <memory>

#include <Eigen/Dense>

namespace mhdk {

using ArrayXr = Eigen::ArrayXd;
using ArrayXc = Eigen::ArrayXcd;
using ArrayXi = Eigen::ArrayXi;
using Complex = std::complex<double>;
using Index = Eigen::Index;

// Periodic box [0,L)^dim sampled on n points per axis. Modes follow the
// standard FFT ordering m in {0, 1, ..., n/2-1, -n/2, ..., -1} along every
// axis, with wavenumber k_j = 2*pi*m_j / L. Flat storage is row-major with
// axis 0 slowest. All per-mode tables are precomputed once; fields hold a
// shared_ptr to the grid they live on.
struct FourierGrid {
  int dim = 0;
  int n = 0;
  double box_length = 0.0;
  Index mode_count = 0;
  std::array<Index, 4> stride{};

  std::array<ArrayXi, 4> mode;  // integer frequency m_j per flat index
  std::array<ArrayXr, 4> k;     // wavenumber k_j per flat index
  ArrayXr ksq;                  // |k|^2
  ArrayXr inv_ksq;              // 1/|k|^2, zero at the zero mode
  ArrayXr keep;                 // 2/3-rule mask: 1 if 3|m_j| <= n for all j
  ArrayXi conj_index;           // flat index of the mirror mode -m

  double dx() const { return box_length / n; }
  double volume() const;       // L^dim
  double cell_volume() const;  // (L/n)^dim

  // Flat index of the mode with integer frequencies m_j (unused axes ignored).
  Index flat(const std::array<int, 4>& m_int) const;
};

using Grid = std::shared_ptr<const FourierGrid>;

// dim must be 2, 3 or 4; points_per_axis a power of two >= 8; box_length > 0.
Grid make_grid(int dim, int points_per_axis, double box_length);

}  // namespace mhdk
