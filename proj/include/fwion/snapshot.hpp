#pragma once

#include <cstdint>
#include <filesystem>

#include "fwion/spinor.hpp"

namespace fwion {

/// Binary snapshot layout (all little-endian):
///
///   char[8]  magic "FWIONSNP"
///   u32      version (1)
///   u32      reserved (0)
///   u64      nx, nz
///   f64      dx, dz, time
///   u64      toggles hash
///   u64      step index
///   f64[2*nx*nz]  up   as (re, im) pairs, x fastest
///   f64[2*nx*nz]  down as (re, im) pairs
struct SnapshotHeader {
  std::uint64_t nx = 0, nz = 0;
  double dx = 0, dz = 0, time = 0;
  std::uint64_t toggles_hash = 0;
  std::uint64_t step = 0;
};

void write_snapshot(const std::filesystem::path& path, const SpinorWavefunction& psi,
                    std::uint64_t toggles_hash, std::uint64_t step = 0);

/// Throws std::runtime_error on a missing, truncated or malformed file.
SpinorWavefunction read_snapshot(const std::filesystem::path& path, SnapshotHeader* header = nullptr);

SnapshotHeader read_snapshot_header(const std::filesystem::path& path);

}  // namespace fwion
