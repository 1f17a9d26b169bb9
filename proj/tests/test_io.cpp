#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "mhdk/checkpoint.hpp"
#include "mhdk/config.hpp"
#include "mhdk/norms.hpp"
#include "mhdk/random_fields.hpp"
#include "mhdk/series_io.hpp"
#include "testkit.hpp"

using namespace mhdk;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good(), ("cannot read " + path).c_str());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

NormSeries sample_series() {
  NormSeries s;
  s.t = {0.0, 0.1, 0.2};
  s.l2_pair = {1.0, 0.9, 1.0 / 3.0};
  s.h1_pair = {2.0, 1.8, 1.6};
  s.s_values = {2.0, 1.5};
  s.hs_cols = {{4.0, 3.5, 3.0}, {3.0, 2.75, 2.5}};
  s.q_values = {4.0, kInfiniteQ};
  s.lq_cols = {{0.5, 0.45, 0.4}, {0.25, 0.2, 1e-17}};
  s.diss_u_acc = {0.0, 0.01, 0.02};
  s.diss_b_acc = {0.0, 0.005, M_PI};
  return s;
}

bool series_equal(const NormSeries& a, const NormSeries& b) {
  return a.t == b.t && a.l2_pair == b.l2_pair && a.h1_pair == b.h1_pair &&
         a.s_values == b.s_values && a.hs_cols == b.hs_cols && a.q_values == b.q_values &&
         a.lq_cols == b.lq_cols && a.diss_u_acc == b.diss_u_acc &&
         a.diss_b_acc == b.diss_b_acc;
}

void test_series_roundtrip() {
  const NormSeries s = sample_series();
  const std::string path = "/tmp/mhdk_test_series.csv";
  emit_series(s, path);

  const std::string text = slurp(path);
  REQUIRE(text.rfind("t,l2_pair,h1_pair,hs:2,hs:1.5,lq:4,lq:inf,diss_u_acc,diss_b_acc\n", 0) == 0,
          "exact header line");
  REQUIRE(!text.empty() && text.back() == '\n', "file ends with a newline");
  REQUIRE(text.find("0.3333333333333333") != std::string::npos, "17 significant digits");

  const NormSeries back = read_series(path);
  REQUIRE(series_equal(s, back), "roundtrip preserves every value bitwise");

  // Emitting again produces byte-identical output.
  const std::string path2 = "/tmp/mhdk_test_series2.csv";
  emit_series(back, path2);
  REQUIRE(slurp(path) == slurp(path2), "re-emission is byte-identical");

  // One sample -> header plus one row.
  NormSeries one;
  one.t = {0.0};
  one.l2_pair = {1.0};
  one.h1_pair = {1.0};
  one.diss_u_acc = {0.0};
  one.diss_b_acc = {0.0};
  emit_series(one, path2);
  const std::string single = slurp(path2);
  REQUIRE(std::count(single.begin(), single.end(), '\n') == 2,
          "single-sample file has two lines");

  NormSeries empty;
  REQUIRE_THROWS(emit_series(empty, path2), std::invalid_argument, "empty series rejected");
  pass("series CSV roundtrip");
}

void test_series_read_errors() {
  const std::string path = "/tmp/mhdk_test_bad.csv";

  spit(path, "time,l2_pair,h1_pair,diss_u_acc,diss_b_acc\n0,1,1,0,0\n");
  REQUIRE_THROWS(read_series(path), std::runtime_error, "wrong leading column rejected");

  spit(path, "t,l2_pair,h1_pair,lq:4,hs:2,diss_u_acc,diss_b_acc\n0,1,1,1,1,0,0\n");
  REQUIRE_THROWS(read_series(path), std::runtime_error, "hs after lq rejected");

  spit(path, "t,l2_pair,h1_pair,diss_u_acc,diss_b_acc\n");
  REQUIRE_THROWS(read_series(path), std::runtime_error, "data-free file rejected");

  spit(path, "t,l2_pair,h1_pair,diss_u_acc,diss_b_acc\n0,1,1,0\n");
  try {
    read_series(path);
    REQUIRE(false, "short row must throw");
  } catch (const std::exception& e) {
    REQUIRE(std::strstr(e.what(), ":2:") != nullptr, "row errors carry the line number");
  }

  spit(path, "t,l2_pair,h1_pair,diss_u_acc,diss_b_acc\n0,1,abc,0,0\n");
  REQUIRE_THROWS(read_series(path), std::runtime_error, "non-numeric cell rejected");

  // CRLF content parses (values unchanged).
  spit(path, "t,l2_pair,h1_pair,diss_u_acc,diss_b_acc\r\n0,1,2,0,0\r\n");
  const NormSeries s = read_series(path);
  REQUIRE(s.rows() == 1 && s.h1_pair[0] == 2.0, "CRLF tolerated");

  REQUIRE_THROWS(read_series("/tmp/mhdk_does_not_exist.csv"), std::runtime_error,
                 "missing file rejected");
  pass("series CSV error reporting");
}

void test_checkpoint_roundtrip() {
  const Grid g = make_grid(3, 16, 2.5);
  const PairField p = random_solenoidal_pair(g, BandSpec{3, 1.0}, 17, 0, 1.0);
  MHDState s{p.u, p.b, 1.375};
  const std::string path = "/tmp/mhdk_test_ckpt.mhdk";
  write_checkpoint(path, s, 0.05, 0.0625);

  const Checkpoint c = read_checkpoint(path);
  REQUIRE(c.mu == 0.05 && c.nu == 0.0625 && c.state.t == 1.375, "scalars roundtrip");
  REQUIRE(c.state.grid()->dim == 3 && c.state.grid()->n == 16 &&
              c.state.grid()->box_length == 2.5,
          "grid descriptor roundtrips");
  for (int i = 0; i < 3; ++i) {
    REQUIRE(0 == std::memcmp(c.state.u.comp[i].c.data(), s.u.comp[i].c.data(),
                             sizeof(Complex) * g->mode_count),
            "u coefficients bit-exact");
    REQUIRE(0 == std::memcmp(c.state.b.comp[i].c.data(), s.b.comp[i].c.data(),
                             sizeof(Complex) * g->mode_count),
            "b coefficients bit-exact");
  }

  // Re-writing the reread state gives a byte-identical file.
  const std::string path2 = "/tmp/mhdk_test_ckpt2.mhdk";
  write_checkpoint(path2, c.state, c.mu, c.nu);
  REQUIRE(slurp(path) == slurp(path2), "checkpoint re-emission byte-identical");
  pass("checkpoint roundtrip");
}

void test_checkpoint_errors() {
  const std::string good = "/tmp/mhdk_test_ckpt.mhdk";
  const std::string bad = "/tmp/mhdk_test_ckpt_bad.mhdk";
  const std::string blob = slurp(good);

  std::string wrong_magic = blob;
  wrong_magic[0] = 'X';
  spit(bad, wrong_magic);
  REQUIRE_THROWS(read_checkpoint(bad), std::runtime_error, "bad magic rejected");

  std::string wrong_version = blob;
  wrong_version[4] = 9;
  spit(bad, wrong_version);
  REQUIRE_THROWS(read_checkpoint(bad), std::runtime_error, "unknown version rejected");

  spit(bad, blob.substr(0, blob.size() / 2));
  REQUIRE_THROWS(read_checkpoint(bad), std::runtime_error, "truncation rejected");

  spit(bad, blob + std::string(8, '\0'));
  REQUIRE_THROWS(read_checkpoint(bad), std::runtime_error, "trailing bytes rejected");

  REQUIRE_THROWS(read_checkpoint("/tmp/mhdk_missing.mhdk"), std::runtime_error,
                 "missing file rejected");
  pass("checkpoint validation");
}

const char* kMinimalConfig =
    "dim = 2\n"
    "n = 32\n"
    "box_length = 6.283185307179586\n"
    "mu = 0.05\n"
    "nu = 0.05\n"
    "dt = 1e-3\n"
    "t_end = 0.1\n"
    "init = random_band\n"
    "seed = 7\n"
    "record_every = 10\n"
    "s_list = 2\n"
    "q_list = 4, inf\n";

void test_config_minimal() {
  const RunConfig c = parse_config_text(kMinimalConfig);
  REQUIRE(c.dim == 2 && c.n == 32 && c.mu == 0.05, "required scalars");
  REQUIRE(c.init.kind == InitKind::random_band && c.init.seed == 7, "init block");
  REQUIRE(c.s_list == std::vector<double>{2.0}, "s list");
  REQUIRE(c.q_list.size() == 2 && c.q_list[1] == kInfiniteQ, "q list with inf");
  REQUIRE(c.integrator == Integrator::if_rk4 && c.dealias && c.nonlinear, "defaults");
  REQUIRE(!c.track_wraparound, "wraparound off for band data");
  REQUIRE(c.picard_iters == 4 && c.quad_panels == 2 && c.checkpoint_every == 0,
          "optional defaults");

  const SolverConfig sc = to_solver_config(c);
  REQUIRE(sc.mu == c.mu && sc.dt == c.dt && sc.nonlinear, "solver mapping");
  const RunOptions ro = to_run_options(c);
  REQUIRE(ro.t_end == 0.1 && ro.record_every == 10 && ro.s_list == c.s_list,
          "run-option mapping");

  // Comments, blank lines, and inline comments are ignored.
  std::string text = std::string("# full line comment\n\n") + kMinimalConfig +
                     "integrator = duhamel_picard  # trailing comment\n";
  const RunConfig c2 = parse_config_text(text);
  REQUIRE(c2.integrator == Integrator::duhamel_picard, "comments stripped");
  pass("config parsing, minimal and defaults");
}

std::string config_without(const std::string& key) {
  std::istringstream in(kMinimalConfig);
  std::ostringstream out;
  std::string line;
  while (std::getline(in, line))
    if (line.rfind(key + " ", 0) != 0) out << line << "\n";
  return out.str();
}

void test_config_errors() {
  // Each required key is individually mandatory, named in the error.
  for (const char* key : {"dim", "n", "box_length", "mu", "nu", "dt", "t_end", "init", "seed",
                          "record_every", "s_list", "q_list"}) {
    try {
      parse_config_text(config_without(key));
      REQUIRE(false, (std::string("missing ") + key + " must throw").c_str());
    } catch (const ConfigError& e) {
      REQUIRE(std::strstr(e.what(), key) != nullptr, "error names the missing key");
    }
  }

  try {
    parse_config_text(std::string(kMinimalConfig) + "nuu = 0.01\n");
    REQUIRE(false, "unknown key must throw");
  } catch (const ConfigError& e) {
    REQUIRE(std::strstr(e.what(), "nuu") != nullptr, "unknown key named");
    REQUIRE(e.line() == 13, "unknown key carries its line number");
  }

  try {
    parse_config_text(std::string(kMinimalConfig) + "mu = 0.1\n");
    REQUIRE(false, "duplicate key must throw");
  } catch (const ConfigError& e) {
    REQUIRE(e.line() == 13, "duplicate reported at its line");
  }

  auto swap_value = [&](const std::string& key, const std::string& value) {
    return config_without(key) + key + " = " + value + "\n";
  };
  REQUIRE_THROWS(parse_config_text(swap_value("mu", "-1")), ConfigError,
                 "negative dissipation rejected");
  REQUIRE_THROWS(parse_config_text(swap_value("dim", "4")), ConfigError,
                 "4D evolution rejected");
  REQUIRE_THROWS(parse_config_text(swap_value("dt", "0")), ConfigError, "zero dt rejected");
  REQUIRE_THROWS(parse_config_text(swap_value("n", "30")), ConfigError,
                 "non power-of-two n rejected");
  REQUIRE_THROWS(parse_config_text(swap_value("q_list", "1.5")), ConfigError,
                 "q below 2 rejected");
  REQUIRE_THROWS(parse_config_text(swap_value("init", "vortex_sheet")), ConfigError,
                 "unknown init rejected");
  REQUIRE_THROWS(parse_config_text(swap_value("record_every", "0")), ConfigError,
                 "record_every must be positive");
  REQUIRE_THROWS(parse_config_text(std::string(kMinimalConfig) + "mu\n"), ConfigError,
                 "key without value rejected");
  pass("config validation");
}

void test_config_wraparound_default() {
  std::string text = config_without("init") + "init = gaussian_localized\n";
  const RunConfig c = parse_config_text(text);
  REQUIRE(c.track_wraparound, "localized data tracks wraparound by default");
  const RunConfig c2 = parse_config_text(text + "track_wraparound = false\n");
  REQUIRE(!c2.track_wraparound, "explicit override respected");
  pass("wraparound default follows the data kind");
}

void test_cli_smoke() {
  // The binary lives next to the test executables; errors must map to exit 1.
  REQUIRE(std::system("./mhdk run --config /tmp/mhdk_no_such_file.cfg >/dev/null 2>&1") != 0,
          "missing config fails");
  REQUIRE(std::system("./mhdk --definitely-not-a-flag >/dev/null 2>&1") != 0,
          "unknown flag fails");
  const int ok = std::system("./mhdk check-inequalities --cases GN_2_8a --samples 3 "
                             "--n 16 --dim 2 >/dev/null 2>&1");
  REQUIRE(ok == 0, "tiny inequality run succeeds");
  pass("CLI exit codes");
}

}  // namespace

int main() {
  test_series_roundtrip();
  test_series_read_errors();
  test_checkpoint_roundtrip();
  test_checkpoint_errors();
  test_config_minimal();
  test_config_errors();
  test_config_wraparound_default();
  test_cli_smoke();
  std::cout << "test_io: all sections passed\n";
  return 0;
}
