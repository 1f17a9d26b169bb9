#include "mhdk/checkpoint.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace mhdk {
namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint blocks are little-endian; this port needs byte swaps");
static_assert(sizeof(Complex) == 2 * sizeof(double), "packed complex layout expected");

constexpr char kMagic[4] = {'M', 'H', 'D', 'K'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ofstream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ofstream& out, double v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::ifstream& in, const std::string& path) {
  std::uint32_t v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
    throw std::runtime_error(path + ": truncated checkpoint");
  return v;
}

double get_f64(std::ifstream& in, const std::string& path) {
  double v = 0;
  if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
    throw std::runtime_error(path + ": truncated checkpoint");
  return v;
}

void put_field(std::ofstream& out, const VectorField& v) {
  for (const auto& c : v.comp)
    out.write(reinterpret_cast<const char*>(c.c.data()),
              static_cast<std::streamsize>(c.c.size() * sizeof(Complex)));
}

void get_field(std::ifstream& in, const std::string& path, VectorField& v) {
  for (auto& c : v.comp)
    if (!in.read(reinterpret_cast<char*>(c.c.data()),
                 static_cast<std::streamsize>(c.c.size() * sizeof(Complex))))
      throw std::runtime_error(path + ": truncated coefficient block");
}

}  // namespace

void write_checkpoint(const std::string& path, const MHDState& s, double mu, double nu) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  const Grid& g = s.grid();
  out.write(kMagic, sizeof kMagic);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(g->dim));
  put_u32(out, static_cast<std::uint32_t>(g->n));
  put_f64(out, g->box_length);
  put_f64(out, s.t);
  put_f64(out, mu);
  put_f64(out, nu);
  put_field(out, s.u);
  put_field(out, s.b);
  if (!out) throw std::runtime_error("write to " + path + " failed");
}

Checkpoint read_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  char magic[4];
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof magic) != 0)
    throw std::runtime_error(path + ": not a checkpoint file (bad magic)");
  const std::uint32_t version = get_u32(in, path);
  if (version != kVersion)
    throw std::runtime_error(path + ": unsupported checkpoint version " +
                             std::to_string(version));
  const std::uint32_t dim = get_u32(in, path);
  const std::uint32_t n = get_u32(in, path);
  const double box = get_f64(in, path);

  Checkpoint cp;
  Grid g = make_grid(static_cast<int>(dim), static_cast<int>(n), box);
  cp.state.t = get_f64(in, path);
  cp.mu = get_f64(in, path);
  cp.nu = get_f64(in, path);
  cp.state.u = zero_vector_field(g);
  cp.state.b = zero_vector_field(g);
  get_field(in, path, cp.state.u);
  get_field(in, path, cp.state.b);
  char extra;
  if (in.read(&extra, 1))
    throw std::runtime_error(path + ": trailing bytes after coefficient blocks");
  return cp;
}

}  // namespace mhdk
