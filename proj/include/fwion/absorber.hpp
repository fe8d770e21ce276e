#pragma once

#include <vector>

#include "fwion/grid.hpp"
#include "fwion/spinor.hpp"

namespace fwion {

/// cos^(1/8) boundary mask: 1 in the interior, falling smoothly to 0 at the
/// periodic seam over a strip of width width_x (width_z) on each side.
struct MaskFunction {
  double width_x = 0.0;
  double width_z = 0.0;
  static constexpr double exponent = 0.125;

  /// Default strip: 10% of the box extent per side.
  static MaskFunction default_for(const Grid2D& g);

  double factor_x(const Grid2D& g, double x) const;
  double factor_z(const Grid2D& g, double z) const;
  std::vector<double> table(const Grid2D& g) const;
};

struct Absorption {
  /// Removed amplitude (1 - mask) * psi_before, stamped with psi.time.
  SpinorWavefunction flux;
  /// norm(psi_before) - norm(psi_after)
  double removed_probability = 0.0;
};

/// psi <- mask * psi. The mask table must come from MaskFunction::table on
/// psi's grid.
Absorption apply_absorber(SpinorWavefunction& psi, const std::vector<double>& mask);

}  // namespace fwion
