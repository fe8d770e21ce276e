#pragma once

#include <vector>

#include "fwion/laser.hpp"
#include "fwion/toggles.hpp"

namespace fwion {

struct PhaseSpacePoint {
  double t = 0.0;
  double x = 0.0, z = 0.0;
  double px = 0.0, pz = 0.0;  // canonical
};

/// Free electron in the pulse under the same Hamiltonian as the wave
/// propagator with V = 0:
///   H = p^2/2 + p_x A(z,t)/c + A^2/2c^2 (- p^4/8c^2 with mass_shift),
/// with A^2/c^2 when printed_a2 is set. RK4 with fixed step dt; one sample
/// per step including t = 0.
std::vector<PhaseSpacePoint> classical_trajectory(const LaserPulse& laser, const TermToggles& toggles,
                                                  PhaseSpacePoint start, double t_end, double dt);

struct Excursion {
  double x = 0.0;  // max |x - x0|
  double z = 0.0;  // max |z - z0|
};

/// Largest displacement of an electron released at rest at the origin.
Excursion classical_excursion(const LaserPulse& laser, const TermToggles& toggles, double t_end);

/// Largest deviation from the one-period running mean while the pulse is on,
/// for an electron released at rest at the origin.
Excursion classical_quiver(const LaserPulse& laser, const TermToggles& toggles);

}  // namespace fwion
