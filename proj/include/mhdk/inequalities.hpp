#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mhdk/norms.hpp"
#include "mhdk/random_fields.hpp"

namespace mhdk {

// Catalogue of the two-sided norm comparisons the artifact measures. The id
// tokens (GN_2_7a, L1_2_9d, ...) are the stable external vocabulary used by
// the CLI and reports; families with free derivative orders carry (l, m).
enum class IneqFamily {
  GN_2_7a,   // n=2:  |f|_inf <= |f|_2^{1/2} |D2 f|_2^{1/2}
  GN_2_7b,   // n=3:  |f|_inf <= |f|_2^{1/4} |D2 f|_2^{3/4}
  GN_2_8a,   // any n: |Df|_2 <= |f|_2^{1/2} |D2 f|_2^{1/2}
  GN_2_8b,   // any n: |Dl f|_2 <= |f|_2^{1-l/m} |Dm f|_2^{l/m}
  L1_2_9a,   // n=2:  |f|_inf |Df|_2 <= C |f|_2 |D2 f|_2
  L1_2_9b,   // n=2:  |f|_inf |D2 f|_2 <= C |f|_2 |D3 f|_2
  L1_2_9c,   // n=2:  |Df|_inf |Df|_2 <= C |f|_2 |D3 f|_2
  L1_2_9d,   // n=2:  |Dl f|_inf |D(m-l) f|_2 <= C |f|_2 |D(m+1) f|_2, m>=2, 0<=l<=m-2
  L2_2_10a,  // n=3:  |f|_inf |Df|_2 <= C |f|_2^{1/2} |Df|_2^{1/2} |D2 f|_2
  L2_2_10b,  // n=3:  |f|_inf |D2 f|_2 <= C |f|_2^{1/2} |Df|_2^{1/2} |D3 f|_2
  L2_2_10c,  // n=3:  |Df|_inf |Df|_2 <= C |f|_2^{1/2} |Df|_2^{1/2} |D3 f|_2
  L2_2_10d,  // n=3:  |Df|_inf |D2 f|_2 <= C |f|_2^{3/4} |D2 f|_2^{1/4} |D4 f|_2
  L2_2_10e,  // n=3:  |D2 f|_inf |D2 f|_2 <= C |f|_2^{3/4} |D2 f|_2^{1/4} |D5 f|_2
  L2_2_10f,  // n=3:  |Dl f|_inf |D(m-l) f|_2 <=
             //       C |f|_2^{(l+3/2)/(l+2)} |D(l+2) f|_2^{(1/2)/(l+2)} |D(m+1) f|_2,
             //       m>=3, 0<=l<=m-3
  SOB_2_11,  // n=4:  |f|_4 <= C |Df|_2
  L3_2_12,   // n=4:  |Dl f|_4 |D(m-l) f|_4 <= C |Df|_2 |D(m+1) f|_2, m>=1, 0<=l<=m-1
};

struct InequalityCase {
  IneqFamily family;
  int l = 0;
  int m = 0;
};

// Accepts both the full token ("L2_2_10f(0,3)") and the bare form ("2.10f(0,3)",
// "2.7a"). Parametric families fall back to their smallest legal (l, m).
InequalityCase parse_case(const std::string& token);
std::string case_name(const InequalityCase& c);

// Space dimension the case is stated in; 0 means any.
int case_dim(const InequalityCase& c);

// Evaluate both sides verbatim on a velocity/magnetic pair. Throws if the
// grid dimension does not match the case or (l, m) is out of range.
InequalityReport evaluate(const InequalityCase& c, const PairField& f);

struct EnsembleReport {
  InequalityCase c;
  int dim = 0;
  int n = 0;
  int band = 0;
  double slope = 0.0;
  int samples = 0;
  uint64_t seed = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  int degenerate_count = 0;
};

// Max/mean ratio over `samples` random band-limited solenoidal pairs, sample
// i drawn deterministically from (seed, i). workers = 0 reads MHDK_WORKERS
// (default: hardware concurrency); the result is identical for any worker
// count because per-sample ratios land in an indexed buffer that is reduced
// serially.
EnsembleReport ensemble_constant(const InequalityCase& c, const Grid& g, int samples,
                                 uint64_t seed, const BandSpec& spec, int workers = 0);

}  // namespace mhdk
