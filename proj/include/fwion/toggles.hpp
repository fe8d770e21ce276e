#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fwion/types.hpp"

namespace fwion {

/// Which parts of the weakly relativistic Hamiltonian are switched on. H_0
/// (including the laser vector potential) is always present.
struct TermToggles {
  bool dipole_approximation = false;
  bool pauli = false;       // sigma . B / 2c
  bool mass_shift = false;  // -p^4 / 8c^2
  bool darwin = false;      // div E' / 8c^2
  bool spin_orbit = false;  // sigma . (E' x p) / 4c^2
  std::optional<double> c_override;
  /// Use A^2/c^2 in the interaction exponent instead of A^2/2c^2.
  bool printed_a2 = false;

  double c() const { return c_override.value_or(constants::c); }
  bool spin_coupled() const { return pauli || spin_orbit; }
  /// Throws ConfigError for a non-positive c_override.
  void validate() const;
  /// Stable 64-bit FNV-1a hash over every field.
  std::uint64_t hash() const;
  std::string describe() const;

  static TermToggles nonrelativistic() { return {}; }
  static TermToggles all_on() {
    TermToggles t;
    t.pauli = t.mass_shift = t.darwin = t.spin_orbit = true;
    return t;
  }
};

/// FNV-1a over raw bytes, chained from `seed`.
std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed = 1469598103934665603ull);
std::uint64_t fnv1a(const std::string& s, std::uint64_t seed = 1469598103934665603ull);

}  // namespace fwion
