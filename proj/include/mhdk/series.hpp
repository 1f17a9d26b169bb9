#pragma once

#include <vector>

namespace mhdk {

// Time series of norms recorded during a run.  Column j of hs_cols tracks
// s_values[j]; same for lq_cols / q_values.  diss_u_acc and diss_b_acc are the
// running time integrals of 2*mu*|Du|_2^2 and 2*nu*|Db|_2^2 (trapezoid on the
// recorded grid), so energy bookkeeping can be done from the file alone.
struct NormSeries {
  std::vector<double> t;
  std::vector<double> l2_pair;
  std::vector<double> h1_pair;
  std::vector<double> s_values;
  std::vector<double> q_values;
  std::vector<std::vector<double>> hs_cols;
  std::vector<std::vector<double>> lq_cols;
  std::vector<double> diss_u_acc;
  std::vector<double> diss_b_acc;

  std::size_t rows() const { return t.size(); }
  void clear() {
    t.clear();
    l2_pair.clear();
    h1_pair.clear();
    for (auto& c : hs_cols) c.clear();
    for (auto& c : lq_cols) c.clear();
    diss_u_acc.clear();
    diss_b_acc.clear();
  }
};

}  // namespace mhdk
