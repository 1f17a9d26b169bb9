#include "mhdk/transforms.hpp"

#include <fftw3.h>

#include <cstdint>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace mhdk {
namespace {

// The fields are real, so the transforms run through r2c/c2r plans on the
// half spectrum (the last axis keeps frequencies 0..n/2) and the full
// coefficient array is filled through the Hermitian mirror. That halves the
// transform work relative to c2c without changing the SpectralField layout.
//
// One plan pair per (dim, n), FFTW_ESTIMATE. ESTIMATE keeps plan selection
// independent of runtime timing, so transform results are bitwise
// reproducible run to run; execution goes through the new-array interface on
// per-thread buffers, which is the documented thread-safe way to share plans.
struct PlanEntry {
  double* sr = nullptr;        // planning buffers, kept alive with the plans
  fftw_complex* sc = nullptr;
  fftw_plan fwd = nullptr;     // r2c
  fftw_plan bwd = nullptr;     // c2r (input scratch is clobbered, by design)
  Index half_count = 0;

  // unpack[i]: half-spectrum slot holding full-array index i, with
  // unpack_conj[i] set when the value must be conjugated (negative last-axis
  // frequency). pack[j]: full-array index stored in half slot j.
  std::vector<Index> unpack;
  std::vector<std::uint8_t> unpack_conj;
  std::vector<Index> pack;
};

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

const PlanEntry& plans_for(const Grid& g) {
  static std::map<std::pair<int, int>, PlanEntry> cache;
  std::lock_guard<std::mutex> lock(planner_mutex());
  auto it = cache.find({g->dim, g->n});
  if (it != cache.end()) return it->second;

  const int d = g->dim, n = g->n;
  const Index nc = n / 2 + 1;
  PlanEntry e;
  e.half_count = nc;
  for (int a = 0; a + 1 < d; ++a) e.half_count *= n;

  e.sr = fftw_alloc_real(static_cast<size_t>(g->mode_count));
  e.sc = fftw_alloc_complex(static_cast<size_t>(e.half_count));
  if (!e.sr || !e.sc) throw std::runtime_error("transform buffer allocation failed");
  int sizes[4] = {n, n, n, n};
  e.fwd = fftw_plan_dft_r2c(d, sizes, e.sr, e.sc, FFTW_ESTIMATE);
  e.bwd = fftw_plan_dft_c2r(d, sizes, e.sc, e.sr, FFTW_ESTIMATE);
  if (!e.fwd || !e.bwd) throw std::runtime_error("transform planning failed");

  // Row strides of the leading d-1 axes, in units of half-spectrum rows.
  Index rstride[4] = {0, 0, 0, 0};
  if (d >= 2) {
    rstride[d - 2] = 1;
    for (int a = d - 3; a >= 0; --a) rstride[a] = rstride[a + 1] * n;
  }

  e.unpack.resize(g->mode_count);
  e.unpack_conj.assign(g->mode_count, 0);
  for (Index i = 0; i < g->mode_count; ++i) {
    const int m_last = g->mode[d - 1][i];
    if (m_last >= 0) {
      e.unpack[i] = (i / n) * nc + m_last;
    } else {
      Index row = 0;
      for (int a = 0; a + 1 < d; ++a) {
        const Index idx = (i / g->stride[a]) % n;
        row += ((n - idx) % n) * rstride[a];
      }
      e.unpack[i] = row * nc + (-m_last);
      e.unpack_conj[i] = 1;
    }
  }
  e.pack.resize(e.half_count);
  for (Index j = 0; j < e.half_count; ++j) e.pack[j] = (j / nc) * n + (j % nc);

  return cache.emplace(std::make_pair(g->dim, g->n), std::move(e)).first->second;
}

// Per-thread aligned work buffers, grown on demand.
struct WorkPair {
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
};

WorkPair work_buffers(Index real_count, Index cplx_count) {
  struct Holder {
    double* r = nullptr;
    fftw_complex* c = nullptr;
    Index rcap = 0, ccap = 0;
    ~Holder() {
      if (r) fftw_free(r);
      if (c) fftw_free(c);
    }
  };
  thread_local Holder h;
  if (h.rcap < real_count) {
    if (h.r) fftw_free(h.r);
    h.r = fftw_alloc_real(static_cast<size_t>(real_count));
    if (!h.r) throw std::runtime_error("transform buffer allocation failed");
    h.rcap = real_count;
  }
  if (h.ccap < cplx_count) {
    if (h.c) fftw_free(h.c);
    h.c = fftw_alloc_complex(static_cast<size_t>(cplx_count));
    if (!h.c) throw std::runtime_error("transform buffer allocation failed");
    h.ccap = cplx_count;
  }
  return {h.r, h.c};
}

}  // namespace

SpectralField forward(const Grid& g, const ArrayXr& samples) {
  if (samples.size() != g->mode_count)
    throw std::invalid_argument("sample count does not match grid");
  const PlanEntry& plans = plans_for(g);
  const WorkPair buf = work_buffers(g->mode_count, plans.half_count);
  for (Index i = 0; i < g->mode_count; ++i) buf.real[i] = samples[i];
  fftw_execute_dft_r2c(plans.fwd, buf.real, buf.cplx);

  SpectralField f{g, ArrayXc(g->mode_count)};
  const double scale = 1.0 / static_cast<double>(g->mode_count);
  for (Index i = 0; i < g->mode_count; ++i) {
    const Index j = plans.unpack[i];
    const double re = buf.cplx[j][0] * scale;
    const double im = buf.cplx[j][1] * scale;
    f.c[i] = Complex(re, plans.unpack_conj[i] ? -im : im);
  }
  return f;
}

ArrayXr inverse(const SpectralField& f) {
  const Grid& g = f.grid;
  const PlanEntry& plans = plans_for(g);
  const WorkPair buf = work_buffers(g->mode_count, plans.half_count);
  // Only the closed half spectrum is read; the mirror half is implied by the
  // real-output transform (coefficients are Hermitian for real fields).
  for (Index j = 0; j < plans.half_count; ++j) {
    const Complex& c = f.c[plans.pack[j]];
    buf.cplx[j][0] = c.real();
    buf.cplx[j][1] = c.imag();
  }
  fftw_execute_dft_c2r(plans.bwd, buf.cplx, buf.real);
  ArrayXr out(g->mode_count);
  for (Index i = 0; i < g->mode_count; ++i) out[i] = buf.real[i];
  return out;
}

}  // namespace mhdk