#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "fwion/grid.hpp"
#include "fwion/laser.hpp"
#include "fwion/observables.hpp"
#include "fwion/potential.hpp"
#include "fwion/toggles.hpp"

namespace fwion {

struct GridConfig {
  std::size_t nx = 256, nz = 256;
  double dx = 0.2, dz = 0.2;  // bohr
};

struct PotentialConfig {
  std::string type = "soft_core";  // soft_core | harmonic | free
  double k = 6.48;                 // hartree bohr
  double q_e = 1.0;                // bohr^2
  int Z = 3;
  double omega = 1.0;              // harmonic only
};

struct LaserConfig {
  bool enabled = true;
  double E0 = 0.0;     // a.u.
  double omega = 0.18372;  // a.u., 248 nm
  double turn_on_cycles = 3.0;
  double plateau_cycles = 10.0;
  /// Field-free evolution after the pulse, in laser periods.
  double free_cycles = 0.0;
};

struct AbsorberConfig {
  bool enabled = false;
  /// Strip width per side; 0 selects 10% of the box.
  double width_x = 0.0, width_z = 0.0;
  int cadence = 1;
};

struct InitialStateConfig {
  std::string kind = "ground";  // ground | gaussian
  double x0 = 0, z0 = 0, sx = 1, sz = 1, kx = 0, kz = 0;
  std::string spin = "up";      // up | down | sigma_y_plus
};

struct ObservablesConfig {
  /// Samples are recorded every this many steps; 0 picks 4 samples per
  /// period of max_harmonic.
  int record_every = 0;
  int max_harmonic = 200;
  std::optional<Region> com_window;
  LaplacianOrdering ordering = LaplacianOrdering::on_product;
  /// Whether the turn-on is part of the spectral window.
  bool spectrum_include_turn_on = false;
};

struct PhotoelectronConfig {
  bool enabled = false;
  /// Bound-region radius; negative selects 5 ground-state radii.
  double X_I = -1.0;
  double X_0 = 10.0;
};

struct EigenConfig {
  std::size_t n_levels = 5;
  double t_total = 20.0;
  double dt = 0.005;
};

struct RunConfig {
  std::string name = "custom";
  GridConfig grid;
  PotentialConfig potential;
  LaserConfig laser;
  TermToggles toggles;
  double dt = 0.05;
  ObservablesConfig observables;
  AbsorberConfig absorber;
  PhotoelectronConfig photoelectron;
  InitialStateConfig initial;
  EigenConfig eigen;
  long checkpoint_every = 0;

  /// Throws ConfigError on any inconsistent or out-of-range value.
  void validate() const;

  Grid2D make_grid() const;
  Potential make_potential() const;
  std::optional<LaserPulse> make_laser() const;
  /// Pulse plus free evolution, in a.u.
  double total_time() const;
  long total_steps() const;
  int record_cadence() const;
};

/// Unit-tagged JSON. Laser strength may be given as intensity_Wcm2 or E0_au
/// and frequency as wavelength_nm or omega_au. Unknown keys are rejected.
RunConfig config_from_json(const nlohmann::json& j);
/// Canonical form with a.u. values only.
nlohmann::json config_to_json(const RunConfig& c);
/// FNV-1a of the canonical JSON of everything that affects the numbers
/// (the name is left out).
std::uint64_t config_hash(const RunConfig& c);

RunConfig load_config(const std::string& path);

/// Applies "a.b.c=value" to a JSON object; the value is parsed as JSON and
/// falls back to a string. Setting one of a unit-alias pair (intensity_Wcm2
/// and E0_au, wavelength_nm and omega_au) drops the other.
void apply_override(nlohmann::json& j, const std::string& assignment);

}  // namespace fwion
