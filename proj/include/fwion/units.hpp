#pragma once

namespace fwion {

/// Peak field in a.u. from intensity in W/cm^2.
double intensity_to_field(double intensity_Wcm2);
/// Angular frequency in a.u. from wavelength in nm.
double wavelength_to_omega(double wavelength_nm);

struct StrongFieldParameters {
  double Up = 0.0;       // ponderomotive energy E0^2 / 4 omega^2
  double keldysh = 0.0;  // sqrt(Ip / 2Up)
  int cutoff_order = 0;  // round((Ip + 3.17 Up) / omega)
  double cutoff_energy = 0.0;
};

StrongFieldParameters ponderomotive_and_keldysh(double E0, double omega, double Ip);

}  // namespace fwion
