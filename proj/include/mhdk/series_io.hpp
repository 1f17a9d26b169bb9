#pragma once

#include <string>

#include "mhdk/series.hpp"

namespace mhdk {

// CSV with the exact header
//   t,l2_pair,h1_pair,hs:<s>...,lq:<q>...,diss_u_acc,diss_b_acc
// one row per record, %.17g decimals (roundtrip-exact), every line
// newline-terminated. Infinite q prints as "inf".
void emit_series(const NormSeries& series, const std::string& path);

// Parses a file written by emit_series. Column values land back in the same
// slots; malformed content is reported with its line number.
NormSeries read_series(const std::string& path);

}  // namespace mhdk
