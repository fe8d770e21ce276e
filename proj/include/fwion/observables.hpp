#pragma once

#include <optional>

#include "fwion/potential.hpp"
#include "fwion/spinor.hpp"
#include "fwion/toggles.hpp"

namespace fwion {

/// Rectangular region for restricted averages.
struct Region {
  double x_min = 0, x_max = 0, z_min = 0, z_max = 0;
  bool contains(double x, double z) const { return x >= x_min && x <= x_max && z >= z_min && z <= z_max; }
};

struct CenterOfMass {
  double x = 0.0;
  double z = 0.0;
};

/// sum x |psi|^2 dx dz and sum z |psi|^2 dx dz, optionally only over the
/// points inside `region`. Not divided by the norm.
CenterOfMass center_of_mass(const SpinorWavefunction& psi, const std::optional<Region>& region = std::nullopt);

/// sum |down|^2 dx dz
double spin_down_population(const SpinorWavefunction& psi);

/// Where the relativistic Laplacian acts in the acceleration correction.
enum class LaplacianOrdering {
  on_product,   // (3/2c^2) lap [F psi], spectral
  on_function,  // (3/2c^2) (lap F) psi, analytic
};

struct Acceleration {
  double x = 0.0;        // with the 1/c^2 correction
  double z = 0.0;
  double x_plain = 0.0;  // <-dV/dx>
  double z_plain = 0.0;
};

/// <(1 + (3/2c^2) lap)(-grad V)> with c from the toggles. The laser force is
/// not included.
Acceleration acceleration(const SpinorWavefunction& psi, const Potential& potential, const TermToggles& toggles,
                          LaplacianOrdering ordering = LaplacianOrdering::on_product);

/// Inversion and reflection parities of a scalar field about the origin:
/// <f|P f>/<f|f> for P = x -> -x, z -> -z and (x,z) -> (-x,-z).
struct Parities {
  double x = 0.0;
  double z = 0.0;
  double inversion = 0.0;
};
Parities parities(const Field& f, const Grid2D& g);

}  // namespace fwion
