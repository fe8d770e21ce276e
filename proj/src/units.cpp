#include "fwion/units.hpp"

#include <cmath>
#include <limits>

#include "fwion/types.hpp"

namespace fwion {

double intensity_to_field(double intensity_Wcm2) {
  if (!(intensity_Wcm2 > 0.0)) throw ConfigError("intensity must be positive");
  return std::sqrt(intensity_Wcm2 / constants::intensity_au_Wcm2);
}

double wavelength_to_omega(double wavelength_nm) {
  if (!(wavelength_nm > 0.0)) throw ConfigError("wavelength must be positive");
  return constants::omega_nm / wavelength_nm;
}

StrongFieldParameters ponderomotive_and_keldysh(double E0, double omega, double Ip) {
  StrongFieldParameters s;
  s.Up = E0 * E0 / (4.0 * omega * omega);
  s.keldysh = s.Up > 0.0 ? std::sqrt(Ip / (2.0 * s.Up)) : std::numeric_limits<double>::infinity();
  s.cutoff_energy = Ip + 3.17 * s.Up;
  s.cutoff_order = static_cast<int>(std::lround(s.cutoff_energy / omega));
  return s;
}

}  // namespace fwion
