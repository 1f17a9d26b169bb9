#include "mhdk/inequalities.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace mhdk {
namespace {

struct FamilyInfo {
  IneqFamily family;
  const char* name;   // canonical token
  const char* bare;   // shorthand accepted on the CLI
  int dim;            // 0 = any
  bool parametric;
  int l0, m0;         // smallest legal instance for parametric families
};

const FamilyInfo kFamilies[] = {
    {IneqFamily::GN_2_7a, "GN_2_7a", "2.7a", 2, false, 0, 0},
    {IneqFamily::GN_2_7b, "GN_2_7b", "2.7b", 3, false, 0, 0},
    {IneqFamily::GN_2_8a, "GN_2_8a", "2.8a", 0, false, 0, 0},
    {IneqFamily::GN_2_8b, "GN_2_8b", "2.8b", 0, true, 1, 2},
    {IneqFamily::L1_2_9a, "L1_2_9a", "2.9a", 2, false, 0, 0},
    {IneqFamily::L1_2_9b, "L1_2_9b", "2.9b", 2, false, 0, 0},
    {IneqFamily::L1_2_9c, "L1_2_9c", "2.9c", 2, false, 0, 0},
    {IneqFamily::L1_2_9d, "L1_2_9d", "2.9d", 2, true, 0, 2},
    {IneqFamily::L2_2_10a, "L2_2_10a", "2.10a", 3, false, 0, 0},
    {IneqFamily::L2_2_10b, "L2_2_10b", "2.10b", 3, false, 0, 0},
    {IneqFamily::L2_2_10c, "L2_2_10c", "2.10c", 3, false, 0, 0},
    {IneqFamily::L2_2_10d, "L2_2_10d", "2.10d", 3, false, 0, 0},
    {IneqFamily::L2_2_10e, "L2_2_10e", "2.10e", 3, false, 0, 0},
    {IneqFamily::L2_2_10f, "L2_2_10f", "2.10f", 3, true, 0, 3},
    {IneqFamily::SOB_2_11, "SOB_2_11", "2.11", 4, false, 0, 0},
    {IneqFamily::L3_2_12, "L3_2_12", "2.12", 4, true, 0, 1},
};

const FamilyInfo& info_for(IneqFamily f) {
  for (const auto& e : kFamilies)
    if (e.family == f) return e;
  throw std::logic_error("unknown inequality family");
}

void require_params(const InequalityCase& c) {
  switch (c.family) {
    case IneqFamily::GN_2_8b:
      if (c.m < 1 || c.l < 0 || c.l > c.m)
        throw std::invalid_argument(case_name(c) + ": needs 0 <= l <= m, m >= 1");
      break;
    case IneqFamily::L1_2_9d:
      if (c.m < 2 || c.l < 0 || c.l > c.m - 2)
        throw std::invalid_argument(case_name(c) + ": needs m >= 2 and 0 <= l <= m-2");
      break;
    case IneqFamily::L2_2_10f:
      if (c.m < 3 || c.l < 0 || c.l > c.m - 3)
        throw std::invalid_argument(case_name(c) + ": needs m >= 3 and 0 <= l <= m-3");
      break;
    case IneqFamily::L3_2_12:
      if (c.m < 1 || c.l < 0 || c.l > c.m - 1)
        throw std::invalid_argument(case_name(c) + ": needs m >= 1 and 0 <= l <= m-1");
      break;
    default:
      break;
  }
}

InequalityReport make_report(const InequalityCase& c, double lhs, double rhs) {
  InequalityReport r;
  r.case_id = case_name(c);
  r.lhs = lhs;
  r.rhs = rhs;
  if (rhs == 0.0) {
    r.degenerate = true;
    r.ratio = 0.0;
  } else {
    r.ratio = lhs / rhs;
  }
  return r;
}

int default_workers() {
  if (const char* env = std::getenv("MHDK_WORKERS")) {
    const int w = std::atoi(env);
    if (w >= 1) return w;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

}  // namespace

InequalityCase parse_case(const std::string& token) {
  std::string head = token;
  int l = -1, m = -1;
  const auto paren = token.find('(');
  if (paren != std::string::npos) {
    head = token.substr(0, paren);
    const auto close = token.find(')', paren);
    const auto comma = token.find(',', paren);
    if (close == std::string::npos || comma == std::string::npos || comma > close)
      throw std::invalid_argument("malformed case parameters in '" + token + "'");
    l = std::stoi(token.substr(paren + 1, comma - paren - 1));
    m = std::stoi(token.substr(comma + 1, close - comma - 1));
  }
  for (const auto& e : kFamilies) {
    if (head == e.name || head == e.bare) {
      InequalityCase c{e.family, e.parametric ? e.l0 : 0, e.parametric ? e.m0 : 0};
      if (l >= 0) {
        if (!e.parametric)
          throw std::invalid_argument("case '" + head + "' takes no (l,m) parameters");
        c.l = l;
        c.m = m;
      }
      require_params(c);
      return c;
    }
  }
  throw std::invalid_argument("unknown inequality case '" + token + "'");
}

std::string case_name(const InequalityCase& c) {
  const FamilyInfo& e = info_for(c.family);
  if (!e.parametric) return e.name;
  return std::string(e.name) + "(" + std::to_string(c.l) + "," + std::to_string(c.m) + ")";
}

int case_dim(const InequalityCase& c) { return info_for(c.family).dim; }

InequalityReport evaluate(const InequalityCase& c, const PairField& f) {
  require_params(c);
  const int dim = f.grid()->dim;
  const int want = case_dim(c);
  if (want != 0 && dim != want)
    throw std::invalid_argument(case_name(c) + " is stated in dimension " +
                                std::to_string(want) + ", got a grid of dimension " +
                                std::to_string(dim));

  const double inf = kInfiniteQ;
  switch (c.family) {
    case IneqFamily::GN_2_7a:
      return make_report(c, lq_norm(f, inf),
                         std::sqrt(hs_norm(f, 0) * hs_norm(f, 2)));
    case IneqFamily::GN_2_7b:
      return make_report(c, lq_norm(f, inf),
                         std::pow(hs_norm(f, 0), 0.25) * std::pow(hs_norm(f, 2), 0.75));
    case IneqFamily::GN_2_8a:
      return make_report(c, hs_norm(f, 1), std::sqrt(hs_norm(f, 0) * hs_norm(f, 2)));
    case IneqFamily::GN_2_8b: {
      const double theta = static_cast<double>(c.l) / c.m;
      return make_report(c, hs_norm(f, c.l),
                         std::pow(hs_norm(f, 0), 1.0 - theta) * std::pow(hs_norm(f, c.m), theta));
    }
    case IneqFamily::L1_2_9a:
      return make_report(c, lq_norm(f, inf) * hs_norm(f, 1), hs_norm(f, 0) * hs_norm(f, 2));
    case IneqFamily::L1_2_9b:
      return make_report(c, lq_norm(f, inf) * hs_norm(f, 2), hs_norm(f, 0) * hs_norm(f, 3));
    case IneqFamily::L1_2_9c:
      return make_report(c, dm_lq_norm(f, 1, inf) * hs_norm(f, 1),
                         hs_norm(f, 0) * hs_norm(f, 3));
    case IneqFamily::L1_2_9d:
      return make_report(c, dm_lq_norm(f, c.l, inf) * hs_norm(f, c.m - c.l),
                         hs_norm(f, 0) * hs_norm(f, c.m + 1));
    case IneqFamily::L2_2_10a:
      return make_report(c, lq_norm(f, inf) * hs_norm(f, 1),
                         std::sqrt(hs_norm(f, 0) * hs_norm(f, 1)) * hs_norm(f, 2));
    case IneqFamily::L2_2_10b:
      return make_report(c, lq_norm(f, inf) * hs_norm(f, 2),
                         std::sqrt(hs_norm(f, 0) * hs_norm(f, 1)) * hs_norm(f, 3));
    case IneqFamily::L2_2_10c:
      return make_report(c, dm_lq_norm(f, 1, inf) * hs_norm(f, 1),
                         std::sqrt(hs_norm(f, 0) * hs_norm(f, 1)) * hs_norm(f, 3));
    case IneqFamily::L2_2_10d:
      return make_report(c, dm_lq_norm(f, 1, inf) * hs_norm(f, 2),
                         std::pow(hs_norm(f, 0), 0.75) * std::pow(hs_norm(f, 2), 0.25) *
                             hs_norm(f, 4));
    case IneqFamily::L2_2_10e:
      return make_report(c, dm_lq_norm(f, 2, inf) * hs_norm(f, 2),
                         std::pow(hs_norm(f, 0), 0.75) * std::pow(hs_norm(f, 2), 0.25) *
                             hs_norm(f, 5));
    case IneqFamily::L2_2_10f: {
      const double p0 = (c.l + 1.5) / (c.l + 2);
      const double p2 = 0.5 / (c.l + 2);
      return make_report(c, dm_lq_norm(f, c.l, inf) * hs_norm(f, c.m - c.l),
                         std::pow(hs_norm(f, 0), p0) * std::pow(hs_norm(f, c.l + 2), p2) *
                             hs_norm(f, c.m + 1));
    }
    case IneqFamily::SOB_2_11:
      return make_report(c, lq_norm(f, 4.0), hs_norm(f, 1));
    case IneqFamily::L3_2_12: {
      const double lo = dm_lq_norm(f, c.l, 4.0);
      const double hi = c.m - c.l == c.l ? lo : dm_lq_norm(f, c.m - c.l, 4.0);
      return make_report(c, lo * hi, hs_norm(f, 1) * hs_norm(f, c.m + 1));
    }
  }
  throw std::logic_error("unhandled inequality family");
}

EnsembleReport ensemble_constant(const InequalityCase& c, const Grid& g, int samples,
                                 uint64_t seed, const BandSpec& spec, int workers) {
  require_params(c);
  if (samples < 1) throw std::invalid_argument("ensemble needs at least one sample");
  const int want = case_dim(c);
  if (want != 0 && g->dim != want)
    throw std::invalid_argument(case_name(c) + " is stated in dimension " +
                                std::to_string(want) + ", got a grid of dimension " +
                                std::to_string(g->dim));

  if (workers <= 0) workers = default_workers();
  workers = std::min(workers, samples);

  std::vector<double> ratios(samples, 0.0);
  std::vector<char> degenerate(samples, 0);
  auto chunk = [&](int first) {
    for (int i = first; i < samples; i += workers) {
      const PairField p = random_solenoidal_pair(g, spec, seed, static_cast<uint64_t>(i));
      const InequalityReport r = evaluate(c, p);
      ratios[i] = r.ratio;
      degenerate[i] = r.degenerate ? 1 : 0;
    }
  };
  if (workers == 1) {
    chunk(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(chunk, w);
    for (auto& t : pool) t.join();
  }

  EnsembleReport rep;
  rep.c = c;
  rep.dim = g->dim;
  rep.n = g->n;
  rep.band = effective_band(g, spec);
  rep.slope = spec.slope;
  rep.samples = samples;
  rep.seed = seed;
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    rep.max_ratio = std::max(rep.max_ratio, ratios[i]);
    sum += ratios[i];
    rep.degenerate_count += degenerate[i];
  }
  rep.mean_ratio = sum / samples;
  return rep;
}

}  // namespace mhdk
