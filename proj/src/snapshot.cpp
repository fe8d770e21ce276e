#include "fwion/snapshot.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace fwion {

namespace {

constexpr std::array<char, 8> kMagic = {'F', 'W', 'I', 'O', 'N', 'S', 'N', 'P'};
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderBytes = 8 + 4 + 4 + 8 * 2 + 8 * 3 + 8 + 8;

template <class T>
void put(std::ostream& os, T v) {
  static_assert(sizeof(T) == 4 || sizeof(T) == 8);
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
  os.write(reinterpret_cast<const char*>(b), sizeof(T));
}

template <class T>
T get(std::istream& is) {
  unsigned char b[sizeof(T)];
  if (!is.read(reinterpret_cast<char*>(b), sizeof(T))) throw std::runtime_error("snapshot truncated");
  if constexpr (std::endian::native == std::endian::big)
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
  T v;
  std::memcpy(&v, b, sizeof(T));
  return v;
}

SnapshotHeader read_header(std::istream& is) {
  std::array<char, 8> magic{};
  if (!is.read(magic.data(), 8) || magic != kMagic) throw std::runtime_error("not a snapshot file (bad magic)");
  if (get<std::uint32_t>(is) != kVersion) throw std::runtime_error("unsupported snapshot version");
  (void)get<std::uint32_t>(is);
  SnapshotHeader h;
  h.nx = get<std::uint64_t>(is);
  h.nz = get<std::uint64_t>(is);
  h.dx = get<double>(is);
  h.dz = get<double>(is);
  h.time = get<double>(is);
  h.toggles_hash = get<std::uint64_t>(is);
  h.step = get<std::uint64_t>(is);
  if (h.nx < 8 || h.nz < 8 || h.nx > (1u << 20) || h.nz > (1u << 20) || !(h.dx > 0) || !(h.dz > 0))
    throw std::runtime_error("snapshot header is corrupt");
  return h;
}

}  // namespace

void write_snapshot(const std::filesystem::path& path, const SpinorWavefunction& psi,
                    std::uint64_t toggles_hash, std::uint64_t step) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  const auto tmp = path.string() + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot write snapshot " + path.string());
    os.write(kMagic.data(), 8);
    put<std::uint32_t>(os, kVersion);
    put<std::uint32_t>(os, 0);
    put<std::uint64_t>(os, psi.grid.nx());
    put<std::uint64_t>(os, psi.grid.nz());
    put<double>(os, psi.grid.dx());
    put<double>(os, psi.grid.dz());
    put<double>(os, psi.time);
    put<std::uint64_t>(os, toggles_hash);
    put<std::uint64_t>(os, step);
    for (const Field* f : {&psi.up, &psi.down})
      for (const auto& v : *f) {
        put<double>(os, v.real());
        put<double>(os, v.imag());
      }
    if (!os) throw std::runtime_error("failed writing snapshot " + path.string());
  }
  std::filesystem::rename(tmp, path);
}

SnapshotHeader read_snapshot_header(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open snapshot " + path.string());
  return read_header(is);
}

SpinorWavefunction read_snapshot(const std::filesystem::path& path, SnapshotHeader* header) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open snapshot " + path.string());
  const SnapshotHeader h = read_header(is);
  const auto expected = kHeaderBytes + 2 * 16 * h.nx * h.nz;
  if (std::filesystem::file_size(path) != expected)
    throw std::runtime_error("snapshot " + path.string() + " has the wrong size (corrupt or truncated)");
  SpinorWavefunction psi(make_grid(h.nx, h.nz, h.dx, h.dz));
  psi.time = h.time;
  for (Field* f : {&psi.up, &psi.down})
    for (auto& v : *f) {
      const double re = get<double>(is);
      const double im = get<double>(is);
      v = Complex(re, im);
    }
  if (header) *header = h;
  return psi;
}

}  // namespace fwion
