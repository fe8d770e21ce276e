#include "fwion/config.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "fwion/units.hpp"

namespace fwion {

using nlohmann::json;

namespace {

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  std::set<std::string> ok(allowed.begin(), allowed.end());
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!ok.count(it.key())) throw ConfigError("unknown key '" + it.key() + "' in " + where);
}

template <class T>
void get(const json& j, const char* key, T& out, const std::string& where) {
  if (!j.contains(key) || j.at(key).is_null()) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(where + "." + key + " has the wrong type");
  }
}

const char* ordering_name(LaplacianOrdering o) {
  return o == LaplacianOrdering::on_product ? "on_product" : "on_function";
}

}  // namespace

RunConfig config_from_json(const json& j) {
  check_keys(j, "config",
             {"name", "grid", "potential", "laser", "toggles", "dt_au", "observables", "absorber", "photoelectron",
              "ionization_window", "initial_state", "eigen", "checkpoint_every_steps"});
  RunConfig c;
  get(j, "name", c.name, "config");
  get(j, "dt_au", c.dt, "config");
  get(j, "checkpoint_every_steps", c.checkpoint_every, "config");
  if (j.contains("grid")) {
    const auto& g = j["grid"];
    check_keys(g, "grid", {"nx", "nz", "dx_bohr", "dz_bohr"});
    get(g, "nx", c.grid.nx, "grid");
    get(g, "nz", c.grid.nz, "grid");
    get(g, "dx_bohr", c.grid.dx, "grid");
    get(g, "dz_bohr", c.grid.dz, "grid");
  }
  if (j.contains("potential")) {
    const auto& p = j["potential"];
    check_keys(p, "potential", {"type", "k_hartree_bohr", "q_e_bohr2", "Z", "omega_au"});
    get(p, "type", c.potential.type, "potential");
    get(p, "k_hartree_bohr", c.potential.k, "potential");
    get(p, "q_e_bohr2", c.potential.q_e, "potential");
    get(p, "Z", c.potential.Z, "potential");
    get(p, "omega_au", c.potential.omega, "potential");
  }
  if (j.contains("laser")) {
    const auto& l = j["laser"];
    check_keys(l, "laser", {"enabled", "intensity_Wcm2", "E0_au", "wavelength_nm", "omega_au", "turn_on_cycles",
                            "plateau_cycles", "free_cycles"});
    get(l, "enabled", c.laser.enabled, "laser");
    if (l.contains("intensity_Wcm2") && l.contains("E0_au")) throw ConfigError("give either intensity_Wcm2 or E0_au");
    if (l.contains("wavelength_nm") && l.contains("omega_au")) throw ConfigError("give either wavelength_nm or omega_au");
    if (l.contains("intensity_Wcm2")) c.laser.E0 = intensity_to_field(l["intensity_Wcm2"].get<double>());
    get(l, "E0_au", c.laser.E0, "laser");
    if (l.contains("wavelength_nm")) c.laser.omega = wavelength_to_omega(l["wavelength_nm"].get<double>());
    get(l, "omega_au", c.laser.omega, "laser");
    get(l, "turn_on_cycles", c.laser.turn_on_cycles, "laser");
    get(l, "plateau_cycles", c.laser.plateau_cycles, "laser");
    get(l, "free_cycles", c.laser.free_cycles, "laser");
  }
  if (j.contains("toggles")) {
    const auto& t = j["toggles"];
    check_keys(t, "toggles",
               {"dipole_approximation", "pauli", "mass_shift", "darwin", "spin_orbit", "c_override_au", "printed_a2"});
    get(t, "dipole_approximation", c.toggles.dipole_approximation, "toggles");
    get(t, "pauli", c.toggles.pauli, "toggles");
    get(t, "mass_shift", c.toggles.mass_shift, "toggles");
    get(t, "darwin", c.toggles.darwin, "toggles");
    get(t, "spin_orbit", c.toggles.spin_orbit, "toggles");
    get(t, "printed_a2", c.toggles.printed_a2, "toggles");
    if (t.contains("c_override_au") && !t["c_override_au"].is_null()) c.toggles.c_override = t["c_override_au"].get<double>();
  }
  if (j.contains("observables")) {
    const auto& o = j["observables"];
    check_keys(o, "observables",
               {"record_every_steps", "max_harmonic", "com_window_bohr", "laplacian_ordering", "spectrum_include_turn_on"});
    get(o, "record_every_steps", c.observables.record_every, "observables");
    get(o, "max_harmonic", c.observables.max_harmonic, "observables");
    get(o, "spectrum_include_turn_on", c.observables.spectrum_include_turn_on, "observables");
    if (o.contains("laplacian_ordering")) {
      const auto s = o["laplacian_ordering"].get<std::string>();
      if (s == "on_product") c.observables.ordering = LaplacianOrdering::on_product;
      else if (s == "on_function") c.observables.ordering = LaplacianOrdering::on_function;
      else throw ConfigError("laplacian_ordering must be on_product or on_function");
    }
    if (o.contains("com_window_bohr") && !o["com_window_bohr"].is_null()) {
      const auto w = o["com_window_bohr"].get<std::vector<double>>();
      if (w.size() != 4) throw ConfigError("com_window_bohr needs [x_min, x_max, z_min, z_max]");
      c.observables.com_window = Region{w[0], w[1], w[2], w[3]};
    }
  }
  if (j.contains("absorber")) {
    const auto& a = j["absorber"];
    check_keys(a, "absorber", {"enabled", "width_x_bohr", "width_z_bohr", "cadence_steps"});
    get(a, "enabled", c.absorber.enabled, "absorber");
    get(a, "width_x_bohr", c.absorber.width_x, "absorber");
    get(a, "width_z_bohr", c.absorber.width_z, "absorber");
    get(a, "cadence_steps", c.absorber.cadence, "absorber");
  }
  if (j.contains("photoelectron")) {
    const auto& p = j["photoelectron"];
    check_keys(p, "photoelectron", {"enabled"});
    get(p, "enabled", c.photoelectron.enabled, "photoelectron");
  }
  if (j.contains("ionization_window")) {
    const auto& w = j["ionization_window"];
    check_keys(w, "ionization_window", {"X_I_bohr", "X_0_bohr"});
    get(w, "X_I_bohr", c.photoelectron.X_I, "ionization_window");
    get(w, "X_0_bohr", c.photoelectron.X_0, "ionization_window");
  }
  if (j.contains("initial_state")) {
    const auto& s = j["initial_state"];
    check_keys(s, "initial_state", {"kind", "x0_bohr", "z0_bohr", "sx_bohr", "sz_bohr", "kx_au", "kz_au", "spin"});
    get(s, "kind", c.initial.kind, "initial_state");
    get(s, "x0_bohr", c.initial.x0, "initial_state");
    get(s, "z0_bohr", c.initial.z0, "initial_state");
    get(s, "sx_bohr", c.initial.sx, "initial_state");
    get(s, "sz_bohr", c.initial.sz, "initial_state");
    get(s, "kx_au", c.initial.kx, "initial_state");
    get(s, "kz_au", c.initial.kz, "initial_state");
    get(s, "spin", c.initial.spin, "initial_state");
  }
  if (j.contains("eigen")) {
    const auto& e = j["eigen"];
    check_keys(e, "eigen", {"n_levels", "t_total_au", "dt_au"});
    get(e, "n_levels", c.eigen.n_levels, "eigen");
    get(e, "t_total_au", c.eigen.t_total, "eigen");
    get(e, "dt_au", c.eigen.dt, "eigen");
  }
  c.validate();
  return c;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["name"] = c.name;
  j["grid"] = {{"nx", c.grid.nx}, {"nz", c.grid.nz}, {"dx_bohr", c.grid.dx}, {"dz_bohr", c.grid.dz}};
  j["potential"] = {{"type", c.potential.type}, {"k_hartree_bohr", c.potential.k}, {"q_e_bohr2", c.potential.q_e},
                    {"Z", c.potential.Z}, {"omega_au", c.potential.omega}};
  j["laser"] = {{"enabled", c.laser.enabled},
                {"E0_au", c.laser.E0},
                {"omega_au", c.laser.omega},
                {"turn_on_cycles", c.laser.turn_on_cycles},
                {"plateau_cycles", c.laser.plateau_cycles},
                {"free_cycles", c.laser.free_cycles}};
  j["toggles"] = {{"dipole_approximation", c.toggles.dipole_approximation},
                  {"pauli", c.toggles.pauli},
                  {"mass_shift", c.toggles.mass_shift},
                  {"darwin", c.toggles.darwin},
                  {"spin_orbit", c.toggles.spin_orbit},
                  {"printed_a2", c.toggles.printed_a2},
                  {"c_override_au", c.toggles.c_override ? json(*c.toggles.c_override) : json(nullptr)}};
  j["dt_au"] = c.dt;
  json obs = {{"record_every_steps", c.observables.record_every},
              {"max_harmonic", c.observables.max_harmonic},
              {"laplacian_ordering", ordering_name(c.observables.ordering)},
              {"spectrum_include_turn_on", c.observables.spectrum_include_turn_on},
              {"com_window_bohr", nullptr}};
  if (c.observables.com_window) {
    const auto& w = *c.observables.com_window;
    obs["com_window_bohr"] = {w.x_min, w.x_max, w.z_min, w.z_max};
  }
  j["observables"] = obs;
  j["absorber"] = {{"enabled", c.absorber.enabled},
                   {"width_x_bohr", c.absorber.width_x},
                   {"width_z_bohr", c.absorber.width_z},
                   {"cadence_steps", c.absorber.cadence}};
  j["photoelectron"] = {{"enabled", c.photoelectron.enabled}};
  j["ionization_window"] = {{"X_I_bohr", c.photoelectron.X_I}, {"X_0_bohr", c.photoelectron.X_0}};
  j["initial_state"] = {{"kind", c.initial.kind}, {"x0_bohr", c.initial.x0}, {"z0_bohr", c.initial.z0},
                        {"sx_bohr", c.initial.sx}, {"sz_bohr", c.initial.sz}, {"kx_au", c.initial.kx},
                        {"kz_au", c.initial.kz}, {"spin", c.initial.spin}};
  j["eigen"] = {{"n_levels", c.eigen.n_levels}, {"t_total_au", c.eigen.t_total}, {"dt_au", c.eigen.dt}};
  j["checkpoint_every_steps"] = c.checkpoint_every;
  return j;
}

std::uint64_t config_hash(const RunConfig& c) {
  json j = config_to_json(c);
  j.erase("name");
  j.erase("checkpoint_every_steps");
  return fnv1a(j.dump());
}

void RunConfig::validate() const {
  if (grid.nx < 8 || grid.nz < 8) throw ConfigError("grid needs at least 8 points per axis");
  if (grid.nx % 2 || grid.nz % 2) throw ConfigError("grid point counts must be even");
  if (!(grid.dx > 0) || !(grid.dz > 0)) throw ConfigError("grid spacing must be positive");
  if (potential.type == "soft_core") {
    if (!(potential.k > 0) || !(potential.q_e > 0)) throw ConfigError("soft-core k and q_e must be positive");
  } else if (potential.type == "harmonic") {
    if (!(potential.omega > 0)) throw ConfigError("harmonic omega must be positive");
  } else if (potential.type != "free") {
    throw ConfigError("potential type must be soft_core, harmonic or free");
  }
  if (!(laser.omega > 0)) throw ConfigError("laser frequency must be positive; it also sets the cycle unit");
  if (laser.enabled) {
    if (!(laser.E0 >= 0)) throw ConfigError("laser amplitude must be non-negative");
  }
  if (laser.turn_on_cycles < 0 || laser.plateau_cycles < 0 || laser.free_cycles < 0)
    throw ConfigError("cycle counts must be non-negative");
  toggles.validate();
  if (!(dt > 0) || !std::isfinite(dt)) throw ConfigError("dt_au must be positive");
  if (observables.record_every < 0) throw ConfigError("record_every_steps must be >= 0");
  if (observables.max_harmonic < 1) throw ConfigError("max_harmonic must be >= 1");
  if (absorber.cadence < 1) throw ConfigError("absorber cadence must be >= 1");
  if (absorber.width_x < 0 || absorber.width_z < 0) throw ConfigError("absorber widths must be non-negative");
  if (photoelectron.enabled && !absorber.enabled) throw ConfigError("photoelectron spectra need the absorber");
  if (initial.kind != "ground" && initial.kind != "gaussian") throw ConfigError("initial_state.kind must be ground or gaussian");
  if (initial.kind == "gaussian" && (!(initial.sx > 0) || !(initial.sz > 0)))
    throw ConfigError("initial Gaussian widths must be positive");
  if (initial.kind == "ground" && potential.type == "free") throw ConfigError("free space has no ground state");
  if (initial.spin != "up" && initial.spin != "down" && initial.spin != "sigma_y_plus")
    throw ConfigError("initial_state.spin must be up, down or sigma_y_plus");
  if (eigen.n_levels < 1 || !(eigen.t_total > 0) || !(eigen.dt > 0)) throw ConfigError("invalid eigen settings");
  if (checkpoint_every < 0) throw ConfigError("checkpoint_every_steps must be >= 0");
}

Grid2D RunConfig::make_grid() const { return fwion::make_grid(grid.nx, grid.nz, grid.dx, grid.dz); }

Potential RunConfig::make_potential() const {
  if (potential.type == "soft_core") return make_soft_core(potential.k, potential.q_e, potential.Z);
  if (potential.type == "harmonic") return HarmonicPotential{potential.omega};
  return FreeSpace{};
}

std::optional<LaserPulse> RunConfig::make_laser() const {
  if (!laser.enabled) return std::nullopt;
  return make_laser_pulse(laser.E0, laser.omega, laser.turn_on_cycles, laser.plateau_cycles, toggles.c());
}

double RunConfig::total_time() const {
  if (!laser.enabled) return laser.free_cycles * 2.0 * std::acos(-1.0) / laser.omega;
  const auto L = *make_laser();
  return L.t_p + laser.free_cycles * L.period();
}

long RunConfig::total_steps() const { return static_cast<long>(std::ceil(total_time() / dt - 1e-9)); }

int RunConfig::record_cadence() const {
  if (observables.record_every > 0) return observables.record_every;
  const double period = 2.0 * std::acos(-1.0) / laser.omega / observables.max_harmonic;
  return std::max(1, static_cast<int>(std::floor(period / 4.0 / dt)));
}

RunConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open config " + path);
  try {
    return config_from_json(json::parse(is));
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

void apply_override(json& j, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) throw ConfigError("override must look like key.path=value: " + assignment);
  const std::string path = assignment.substr(0, eq), value = assignment.substr(eq + 1);
  json* node = &j;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (key.empty()) throw ConfigError("empty key in override " + assignment);
    if (dot == std::string::npos) {
      json v;
      try {
        v = json::parse(value);
      } catch (const json::parse_error&) {
        v = value;
      }
      static const std::pair<const char*, const char*> aliases[] = {
          {"intensity_Wcm2", "E0_au"}, {"wavelength_nm", "omega_au"}};
      if (node->is_object()) {
        for (const auto& [a, b] : aliases) {
          if (key == a) node->erase(b);
          if (key == b) node->erase(a);
        }
      } else if (!node->is_null()) {
        throw ConfigError("override " + assignment + " descends into a non-object");
      }
      (*node)[key] = v;
      return;
    }
    if (!node->is_object() && !node->is_null())
      throw ConfigError("override " + assignment + " descends into a non-object");
    node = &(*node)[key];
    start = dot + 1;
  }
}

}  // namespace fwion
