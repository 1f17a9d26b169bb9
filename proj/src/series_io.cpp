#include "mhdk/series_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace mhdk {
namespace {

std::string fmt(double v, const char* spec = "%.17g") {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

[[noreturn]] void bad_line(const std::string& path, int line, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

void emit_series(const NormSeries& s, const std::string& path) {
  if (s.rows() == 0) throw std::invalid_argument("refusing to write an empty series");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");

  out << "t,l2_pair,h1_pair";
  for (double sv : s.s_values) out << ",hs:" << fmt(sv, "%g");
  for (double qv : s.q_values) out << ",lq:" << fmt(qv, "%g");
  out << ",diss_u_acc,diss_b_acc\n";

  for (std::size_t i = 0; i < s.rows(); ++i) {
    out << fmt(s.t[i]) << ',' << fmt(s.l2_pair[i]) << ',' << fmt(s.h1_pair[i]);
    for (const auto& col : s.hs_cols) out << ',' << fmt(col[i]);
    for (const auto& col : s.lq_cols) out << ',' << fmt(col[i]);
    out << ',' << fmt(s.diss_u_acc[i]) << ',' << fmt(s.diss_b_acc[i]) << '\n';
  }
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

NormSeries read_series(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) bad_line(path, 1, "missing header");
  if (!line.empty() && line.back() == '\r') line.pop_back();

  const std::vector<std::string> head = split_csv(line);
  if (head.size() < 5 || head[0] != "t" || head[1] != "l2_pair" || head[2] != "h1_pair" ||
      head[head.size() - 2] != "diss_u_acc" || head.back() != "diss_b_acc")
    bad_line(path, 1, "unrecognized header");

  NormSeries s;
  for (std::size_t j = 3; j + 2 < head.size(); ++j) {
    const std::string& h = head[j];
    const bool is_hs = h.rfind("hs:", 0) == 0;
    const bool is_lq = h.rfind("lq:", 0) == 0;
    if (!is_hs && !is_lq) bad_line(path, 1, "unrecognized column '" + h + "'");
    if (is_hs && !s.q_values.empty()) bad_line(path, 1, "hs column after lq columns");
    char* end = nullptr;
    const double v = std::strtod(h.c_str() + 3, &end);
    if (end == h.c_str() + 3 || *end) bad_line(path, 1, "bad column label '" + h + "'");
    (is_hs ? s.s_values : s.q_values).push_back(v);
  }
  s.hs_cols.resize(s.s_values.size());
  s.lq_cols.resize(s.q_values.size());

  const std::size_t ncol = head.size();
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_csv(line);
    if (cells.size() != ncol)
      bad_line(path, lineno, "expected " + std::to_string(ncol) + " columns, got " +
                                 std::to_string(cells.size()));
    std::vector<double> v(ncol);
    for (std::size_t j = 0; j < ncol; ++j) {
      char* end = nullptr;
      v[j] = std::strtod(cells[j].c_str(), &end);
      if (end == cells[j].c_str() || *end)
        bad_line(path, lineno, "bad number '" + cells[j] + "'");
    }
    std::size_t j = 0;
    s.t.push_back(v[j++]);
    s.l2_pair.push_back(v[j++]);
    s.h1_pair.push_back(v[j++]);
    for (auto& col : s.hs_cols) col.push_back(v[j++]);
    for (auto& col : s.lq_cols) col.push_back(v[j++]);
    s.diss_u_acc.push_back(v[j++]);
    s.diss_b_acc.push_back(v[j++]);
  }
  if (s.rows() == 0) bad_line(path, lineno, "series has no data rows");
  return s;
}

}  // namespace mhdk
