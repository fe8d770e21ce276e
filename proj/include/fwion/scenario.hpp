#pragma once

#include <string>
#include <vector>

#include "fwion/config.hpp"

namespace fwion {

struct ScenarioInfo {
  std::string name;
  std::string description;
  /// What the scenario still shows when run with scale_factor > 1.
  std::string at_reduced_scale;
};

const std::vector<ScenarioInfo>& scenario_catalog();

/// Complete configuration for a catalog entry. scale_factor >= 1 divides the
/// plateau and free-evolution cycle counts; the turn-on is kept. Unknown
/// names raise ConfigError listing the catalog.
RunConfig scenario_config(const std::string& name, double scale_factor = 1.0);

struct ExcursionCheck {
  bool applies = false;
  double excursion_x = 0.0, excursion_z = 0.0;  // bohr, including the packet size
  double limit_x = 0.0, limit_z = 0.0;          // bohr, non-absorbing half widths
};

/// Classical excursion compared with the non-absorbing part of the box.
/// Applies to runs that expect unbound motion: an absorber is on or the
/// initial state is a Gaussian packet. A Gaussian must stay inside for the
/// whole run; a bound start must leave room for twice the quiver amplitude.
/// With the absorber on only the polarization direction is checked.
ExcursionCheck excursion_check(const RunConfig& config);

/// Throws ConfigError with the computed excursion if it does not fit.
void require_excursion_fits(const RunConfig& config);

}  // namespace fwion
