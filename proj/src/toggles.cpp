#include "fwion/toggles.hpp"

#include <cstring>
#include <sstream>

namespace fwion {

std::uint64_t fnv1a(const void* data, std::size_t n, std::uint64_t seed) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = seed;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

std::uint64_t fnv1a(const std::string& s, std::uint64_t seed) { return fnv1a(s.data(), s.size(), seed); }

void TermToggles::validate() const {
  if (c_override && !(*c_override > 0.0)) throw ConfigError("c_override must be positive");
}

std::uint64_t TermToggles::hash() const { return fnv1a(describe()); }

std::string TermToggles::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "dipole=" << dipole_approximation << ";pauli=" << pauli << ";mass_shift=" << mass_shift
     << ";darwin=" << darwin << ";spin_orbit=" << spin_orbit << ";c=" << c()
     << ";printed_a2=" << printed_a2;
  return os.str();
}

}  // namespace fwion
