#include "fwion/scenario.hpp"

#include <cmath>
#include <sstream>

#include "fwion/absorber.hpp"
#include "fwion/classical.hpp"
#include "fwion/eigensolver.hpp"
#include "fwion/units.hpp"

namespace fwion {

namespace {

struct Preset {
  ScenarioInfo info;
  RunConfig config;
};

RunConfig base(const std::string& name, double k, int Z, double intensity, double wavelength, double turn_on,
               double plateau) {
  RunConfig c;
  c.name = name;
  c.potential.type = "soft_core";
  c.potential.k = k;
  c.potential.q_e = 1.0;
  c.potential.Z = Z;
  c.laser.enabled = true;
  c.laser.E0 = intensity_to_field(intensity);
  c.laser.omega = wavelength_to_omega(wavelength);
  c.laser.turn_on_cycles = turn_on;
  c.laser.plateau_cycles = plateau;
  c.initial.kind = "ground";
  return c;
}

void set_grid(RunConfig& c, std::size_t nx, std::size_t nz, double d) {
  c.grid.nx = nx;
  c.grid.nz = nz;
  c.grid.dx = c.grid.dz = d;
}

std::vector<Preset> build() {
  std::vector<Preset> out;

  {
    auto c = base("fig3a_drift_Z3", 6.48, 3, 1.2e17, 248, 3, 10);
    set_grid(c, 2048, 512, 0.15);
    c.dt = 0.02;
    c.absorber.enabled = true;
    out.push_back({{c.name, "Z=3 centre-of-mass drift beyond the dipole approximation, 248 nm, 1.2e17 W/cm^2",
                    "drift direction and zig-zag of <x>,<z>"},
                   c});
  }
  {
    auto c = base("fig3b_hole_Z4", 10.7, 4, 1.2e17, 248, 3, 10);
    set_grid(c, 2048, 512, 0.15);
    c.dt = 0.02;
    c.absorber.enabled = true;
    out.push_back({{c.name, "Z=4 bound dynamics with the magnetic field, 248 nm, 1.2e17 W/cm^2",
                    "bounded <z> excursion and dipole/non-dipole contrast"},
                   c});
  }
  {
    auto c = base("fig4_relaxation", 10.7, 4, 1.2e17, 248, 3, 10);
    set_grid(c, 2048, 512, 0.15);
    c.dt = 0.02;
    c.absorber.enabled = true;
    c.laser.free_cycles = 30;
    c.observables.spectrum_include_turn_on = true;
    out.push_back({{c.name, "Z=4 as fig3b followed by 30 field-free cycles",
                    "relaxation lines after the pulse (qualitative)"},
                   c});
  }
  {
    auto c = base("fig5_stark_Z12", 80.32, 12, 7e16, 527, 5.25, 100);
    set_grid(c, 64, 64, 0.1);
    c.dt = 0.02;
    c.toggles.pauli = true;
    c.toggles.mass_shift = true;
    c.observables.max_harmonic = 120;
    out.push_back({{c.name, "Z=12 relativistic Stark shift of the 1e-g resonance, 527 nm, 7e16 W/cm^2",
                    "sign of the shift and its 1/c^2 scaling"},
                   c});
  }
  {
    auto c = base("fig10_spin", 80.32, 12, 7e16, 527, 5.25, 10);
    set_grid(c, 64, 64, 0.1);
    c.dt = 0.02;
    c.toggles = TermToggles::all_on();
    c.observables.max_harmonic = 120;
    out.push_back({{c.name, "Z=12 spin-down population with all corrections, 527 nm, 7e16 W/cm^2",
                    "2 omega spin flipping and the spin-orbit enhancement"},
                   c});
  }
  {
    auto c = base("fig11_splitting", 80.32, 12, 7e16, 527, 5.25, 100);
    set_grid(c, 64, 64, 0.1);
    c.dt = 0.02;
    c.toggles = TermToggles::all_on();
    c.observables.max_harmonic = 120;
    out.push_back({{c.name, "Z=12 spin-orbit splitting of the resonance lines", "only a bound on the splitting"},
                   c});
  }
  {
    auto c = base("fig12_hhg_Z3", 6.48, 3, 2.5e16, 248, 10, 10);
    set_grid(c, 640, 128, 0.25);
    c.dt = 0.025;
    c.toggles = TermToggles::all_on();
    c.absorber.enabled = true;
    out.push_back({{c.name, "Z=3 harmonic spectrum, 248 nm, 2.5e16 W/cm^2", "odd comb, plateau and cutoff law"}, c});
  }
  {
    auto c = base("fig13_hhg_Z4", 10.7, 4, 1e17, 248, 10, 10);
    set_grid(c, 2560, 128, 0.125);
    c.dt = 0.02;
    c.toggles = TermToggles::all_on();
    c.absorber.enabled = true;
    c.observables.max_harmonic = 500;
    out.push_back({{c.name, "Z=4 keV harmonics in x and z polarization, 248 nm, 1e17 W/cm^2",
                    "odd comb and cutoff law; z channel from the magnetic field"},
                   c});
  }
  {
    auto c = base("fig14_ati_Z3", 6.48, 3, 2.5e16, 248, 3, 10);
    set_grid(c, 2048, 64, 0.25);
    c.dt = 0.05;
    c.toggles = TermToggles::all_on();
    c.absorber.enabled = true;
    c.photoelectron.enabled = true;
    out.push_back({{c.name, "Z=3 above-threshold ionization spectrum, 248 nm, 2.5e16 W/cm^2",
                    "photon-spaced peaks and a tail beyond 2 Up"},
                   c});
  }
  {
    auto c = base("fig15_ati_Z4", 10.7, 4, 1.2e17, 248, 3, 10);
    set_grid(c, 4096, 64, 0.125);
    c.dt = 0.02;
    c.toggles = TermToggles::all_on();
    c.absorber.enabled = true;
    c.photoelectron.enabled = true;
    out.push_back({{c.name, "Z=4 above-threshold ionization spectrum, 248 nm, 1.2e17 W/cm^2",
                    "photon-spaced peaks and a tail beyond 2 Up"},
                   c});
  }
  return out;
}

const std::vector<Preset>& presets() {
  static const std::vector<Preset> p = build();
  return p;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_catalog() {
  static const std::vector<ScenarioInfo> list = [] {
    std::vector<ScenarioInfo> l;
    for (const auto& p : presets()) l.push_back(p.info);
    return l;
  }();
  return list;
}

RunConfig scenario_config(const std::string& name, double scale_factor) {
  if (!(scale_factor >= 1.0) || !std::isfinite(scale_factor)) throw ConfigError("scale_factor must be >= 1");
  for (const auto& p : presets()) {
    if (p.info.name != name) continue;
    RunConfig c = p.config;
    c.laser.plateau_cycles = std::round(c.laser.plateau_cycles / scale_factor);
    c.laser.free_cycles = std::round(c.laser.free_cycles / scale_factor);
    if (c.laser.plateau_cycles < 1) c.laser.plateau_cycles = 1;
    c.validate();
    return c;
  }
  std::ostringstream os;
  os << "unknown scenario '" << name << "'; catalog:";
  for (const auto& s : scenario_catalog()) os << ' ' << s.name;
  throw ConfigError(os.str());
}

ExcursionCheck excursion_check(const RunConfig& config) {
  ExcursionCheck r;
  r.applies = config.laser.enabled && (config.absorber.enabled || config.initial.kind == "gaussian");
  if (!r.applies) return r;
  const auto laser = *config.make_laser();
  if (config.initial.kind == "gaussian") {
    const auto e = classical_excursion(laser, config.toggles, config.total_time());
    r.excursion_x = e.x + 3.0 * config.initial.sx + std::abs(config.initial.x0);
    r.excursion_z = e.z + 3.0 * config.initial.sz + std::abs(config.initial.z0);
  } else {
    // Bound start: returning electrons swing up to twice the quiver amplitude.
    const auto q = classical_quiver(laser, config.toggles);
    const double size = 3.0 * ground_state_radius(config.make_potential());
    r.excursion_x = 2.0 * q.x + size;
    r.excursion_z = 2.0 * q.z + size;
  }
  const auto g = config.make_grid();
  MaskFunction mask = MaskFunction::default_for(g);
  if (config.absorber.width_x > 0) mask.width_x = config.absorber.width_x;
  if (config.absorber.width_z > 0) mask.width_z = config.absorber.width_z;
  r.limit_x = g.half_width_x() - (config.absorber.enabled ? mask.width_x : 0.0);
  r.limit_z = g.half_width_z() - (config.absorber.enabled ? mask.width_z : 0.0);
  return r;
}

void require_excursion_fits(const RunConfig& config) {
  const auto r = excursion_check(config);
  if (!r.applies) return;
  const bool x_ok = r.excursion_x <= r.limit_x;
  const bool z_ok = config.absorber.enabled || r.excursion_z <= r.limit_z;
  if (x_ok && z_ok) return;
  std::ostringstream os;
  os << "grid too small for the requested field: classical excursion x=" << r.excursion_x
     << " bohr, z=" << r.excursion_z << " bohr against usable half widths x=" << r.limit_x << ", z=" << r.limit_z;
  throw ConfigError(os.str());
}

}  // namespace fwion
