#include <cmath>
#include <cstdint>
#include <bit>
#include <cstring>
#include <fstream>

#include "pcf/airy_uniform.hpp"
#include "pcf/errors.hpp"

namespace pcf {

// Layout: "PCFCOEF1", u32 version, u32 n_nodes, u32 s_max, u32 reserved, then
// for each of ahat_re, ahat_im, bhat_re, bhat_im the (s_max + 1) * n_nodes
// float64 values, row-major [s][k]. All little-endian.

namespace {

constexpr char kMagic[8] = {'P', 'C', 'F', 'C', 'O', 'E', 'F', '1'};
constexpr std::uint32_t kVersion = 1;

static_assert(std::endian::native == std::endian::little, "cache format assumes little-endian");

template <typename T>
void put(std::ofstream& out, const T& v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
bool get(std::ifstream& in, T& v) {
  return static_cast<bool>(in.read(reinterpret_cast<char*>(&v), sizeof(T)));
}

}  // namespace

void write_coeff_cache(const CoeffTables& tables, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open coefficient cache for writing: " + path);
  out.write(kMagic, sizeof kMagic);
  put(out, kVersion);
  put(out, static_cast<std::uint32_t>(tables.n_nodes));
  put(out, static_cast<std::uint32_t>(tables.s_max));
  put(out, std::uint32_t{0});
  for (const auto* v : {&tables.ahat_re, &tables.ahat_im, &tables.bhat_re, &tables.bhat_im}) {
    out.write(reinterpret_cast<const char*>(v->data()),
              static_cast<std::streamsize>(v->size() * sizeof(double)));
  }
  if (!out) throw std::runtime_error("failed writing coefficient cache: " + path);
}

bool read_coeff_cache(CoeffTables& tables, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  char magic[8];
  std::uint32_t version = 0, n = 0, s_max = 0, reserved = 0;
  if (!in.read(magic, sizeof magic) || std::memcmp(magic, kMagic, sizeof kMagic) != 0) return false;
  if (!get(in, version) || !get(in, n) || !get(in, s_max) || !get(in, reserved)) return false;
  if (version != kVersion || static_cast<int>(n) != tables.n_nodes ||
      static_cast<int>(s_max) != tables.s_max) {
    return false;
  }
  const std::size_t cells = static_cast<std::size_t>(s_max + 1) * n;
  std::vector<double> parts[4];
  for (auto& v : parts) {
    v.resize(cells);
    if (!in.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(cells * sizeof(double)))) {
      return false;
    }
    for (double x : v) {
      if (!std::isfinite(x)) return false;
    }
  }
  tables.ahat_re = std::move(parts[0]);
  tables.ahat_im = std::move(parts[1]);
  tables.bhat_re = std::move(parts[2]);
  tables.bhat_im = std::move(parts[3]);
  tables.unit_re.resize(n);
  tables.unit_im.resize(n);
  for (std::uint32_t k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * (k + 0.5) / n;
    tables.unit_re[k] = std::cos(theta);
    tables.unit_im[k] = std::sin(theta);
  }
  return true;
}

}  // namespace pcf
