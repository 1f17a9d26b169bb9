#include "mhdk/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include "mhdk/norms.hpp"

namespace mhdk {
namespace {

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

double parse_double(const std::string& v, int line, const std::string& key) {
  if (v == "inf") return kInfiniteQ;
  char* end = nullptr;
  const double x = std::strtod(v.c_str(), &end);
  if (end == v.c_str() || *end) throw ConfigError("key '" + key + "' has a bad number: " + v, line);
  return x;
}

long parse_long(const std::string& v, int line, const std::string& key) {
  char* end = nullptr;
  const long x = std::strtol(v.c_str(), &end, 10);
  if (end == v.c_str() || *end) throw ConfigError("key '" + key + "' has a bad integer: " + v, line);
  return x;
}

std::uint64_t parse_u64(const std::string& v, int line, const std::string& key) {
  char* end = nullptr;
  const unsigned long long x = std::strtoull(v.c_str(), &end, 10);
  if (end == v.c_str() || *end || v.find('-') != std::string::npos)
    throw ConfigError("key '" + key + "' has a bad unsigned integer: " + v, line);
  return x;
}

bool parse_bool(const std::string& v, int line, const std::string& key) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError("key '" + key + "' must be true or false, got: " + v, line);
}

std::vector<double> parse_list(const std::string& v, int line, const std::string& key) {
  std::vector<double> out;
  if (trim(v).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = v.find(',', start);
    const std::string item = trim(v.substr(start, pos - start));
    if (item.empty()) throw ConfigError("key '" + key + "' has an empty list item", line);
    out.push_back(parse_double(item, line, key));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
  std::map<std::string, Entry> kv;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value, got: " + line, lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key", lineno);
    if (kv.count(key)) throw ConfigError("duplicate key '" + key + "'", lineno);
    kv[key] = Entry{value, lineno, false};
  }

  auto take = [&](const std::string& key) -> Entry* {
    auto it = kv.find(key);
    if (it == kv.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  };
  auto require = [&](const std::string& key) -> Entry& {
    Entry* e = take(key);
    if (!e) throw ConfigError("missing required key '" + key + "'", 0);
    return *e;
  };

  RunConfig c;
  {
    Entry& e = require("dim");
    c.dim = static_cast<int>(parse_long(e.value, e.line, "dim"));
    if (c.dim != 2 && c.dim != 3)
      throw ConfigError("time evolution is limited to dim 2 or 3", e.line);
  }
  {
    Entry& e = require("n");
    c.n = static_cast<int>(parse_long(e.value, e.line, "n"));
    if (c.n < 8 || (c.n & (c.n - 1)) != 0)
      throw ConfigError("n must be a power of two, at least 8", e.line);
  }
  auto positive = [&](const char* key, double& dst) {
    Entry& e = require(key);
    dst = parse_double(e.value, e.line, key);
    if (!(dst > 0.0) || !std::isfinite(dst))
      throw ConfigError(std::string("key '") + key + "' must be positive", e.line);
  };
  positive("box_length", c.box_length);
  positive("mu", c.mu);
  positive("nu", c.nu);
  positive("dt", c.dt);
  {
    Entry& e = require("t_end");
    c.t_end = parse_double(e.value, e.line, "t_end");
    if (!(c.t_end >= 0.0) || !std::isfinite(c.t_end))
      throw ConfigError("t_end must be nonnegative", e.line);
  }
  {
    Entry& e = require("init");
    try {
      c.init.kind = parse_init_kind(e.value);
    } catch (const std::invalid_argument& ex) {
      throw ConfigError(ex.what(), e.line);
    }
  }
  {
    Entry& e = require("seed");
    c.init.seed = parse_u64(e.value, e.line, "seed");
  }
  {
    Entry& e = require("record_every");
    c.record_every = static_cast<int>(parse_long(e.value, e.line, "record_every"));
    if (c.record_every < 1) throw ConfigError("record_every must be at least 1", e.line);
  }
  {
    Entry& e = require("s_list");
    c.s_list = parse_list(e.value, e.line, "s_list");
  }
  {
    Entry& e = require("q_list");
    c.q_list = parse_list(e.value, e.line, "q_list");
    for (double q : c.q_list)
      if (q < 2.0) throw ConfigError("q_list entries must be >= 2", e.line);
  }

  c.track_wraparound = c.init.kind == InitKind::gaussian_localized;
  if (Entry* e = take("amplitude")) {
    c.init.amplitude = parse_double(e->value, e->line, "amplitude");
    if (!(c.init.amplitude > 0.0)) throw ConfigError("amplitude must be positive", e->line);
  }
  if (Entry* e = take("band")) {
    c.init.band = static_cast<int>(parse_long(e->value, e->line, "band"));
    if (c.init.band < 0) throw ConfigError("band must be nonnegative", e->line);
  }
  if (Entry* e = take("slope")) c.init.slope = parse_double(e->value, e->line, "slope");
  if (Entry* e = take("sigma")) {
    c.init.sigma = parse_double(e->value, e->line, "sigma");
    if (!(c.init.sigma >= 0.0)) throw ConfigError("sigma must be nonnegative", e->line);
  }
  if (Entry* e = take("integrator")) {
    if (e->value == "if_rk4") c.integrator = Integrator::if_rk4;
    else if (e->value == "duhamel_picard") c.integrator = Integrator::duhamel_picard;
    else throw ConfigError("integrator must be if_rk4 or duhamel_picard", e->line);
  }
  if (Entry* e = take("dealias")) c.dealias = parse_bool(e->value, e->line, "dealias");
  if (Entry* e = take("nonlinear")) c.nonlinear = parse_bool(e->value, e->line, "nonlinear");
  if (Entry* e = take("cfl_abort")) c.cfl_abort = parse_bool(e->value, e->line, "cfl_abort");
  if (Entry* e = take("track_wraparound"))
    c.track_wraparound = parse_bool(e->value, e->line, "track_wraparound");
  if (Entry* e = take("smallness_c")) {
    c.smallness_c = parse_double(e->value, e->line, "smallness_c");
    if (!(c.smallness_c > 0.0)) throw ConfigError("smallness_c must be positive", e->line);
  }
  if (Entry* e = take("checkpoint_every")) {
    c.checkpoint_every = parse_long(e->value, e->line, "checkpoint_every");
    if (c.checkpoint_every < 0)
      throw ConfigError("checkpoint_every must be nonnegative", e->line);
  }
  if (Entry* e = take("picard_iters")) {
    c.picard_iters = static_cast<int>(parse_long(e->value, e->line, "picard_iters"));
    if (c.picard_iters < 0) throw ConfigError("picard_iters must be nonnegative", e->line);
  }
  if (Entry* e = take("quad_panels")) {
    c.quad_panels = static_cast<int>(parse_long(e->value, e->line, "quad_panels"));
    if (c.quad_panels < 1) throw ConfigError("quad_panels must be at least 1", e->line);
  }

  for (const auto& [key, entry] : kv)
    if (!entry.used) throw ConfigError("unknown key '" + key + "'", entry.line);
  return c;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path, 0);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

SolverConfig to_solver_config(const RunConfig& c) {
  SolverConfig s;
  s.mu = c.mu;
  s.nu = c.nu;
  s.dt = c.dt;
  s.dealias = c.dealias;
  s.nonlinear = c.nonlinear;
  s.integrator = c.integrator;
  s.cfl_abort = c.cfl_abort;
  s.picard_iters = c.picard_iters;
  s.quad_panels = c.quad_panels;
  return s;
}

RunOptions to_run_options(const RunConfig& c) {
  RunOptions o;
  o.t_end = c.t_end;
  o.record_every = c.record_every;
  o.s_list = c.s_list;
  o.q_list = c.q_list;
  o.track_wraparound = c.track_wraparound;
  return o;
}

}  // namespace mhdk
