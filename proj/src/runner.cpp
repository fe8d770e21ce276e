#include "fwion/runner.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "fwion/observables.hpp"
#include "fwion/propagator.hpp"
#include "fwion/scenario.hpp"
#include "fwion/snapshot.hpp"

namespace fwion {

namespace fs = std::filesystem;
using nlohmann::json;

std::vector<Column> TimeSeries::columns() const {
  return {{"t", "au", t},
          {"x", "bohr", x},
          {"z", "bohr", z},
          {"p_down", "1", p_down},
          {"a_x", "au", a_x},
          {"a_z", "au", a_z},
          {"a_x_plain", "au", a_x_plain},
          {"a_z_plain", "au", a_z_plain},
          {"norm", "1", norm},
          {"absorbed", "1", absorbed}};
}

TimeSeries TimeSeries::from_columns(const std::vector<Column>& cols) {
  TimeSeries s;
  s.t = find_column(cols, "t").values;
  s.x = find_column(cols, "x").values;
  s.z = find_column(cols, "z").values;
  s.p_down = find_column(cols, "p_down").values;
  s.a_x = find_column(cols, "a_x").values;
  s.a_z = find_column(cols, "a_z").values;
  s.a_x_plain = find_column(cols, "a_x_plain").values;
  s.a_z_plain = find_column(cols, "a_z_plain").values;
  s.norm = find_column(cols, "norm").values;
  s.absorbed = find_column(cols, "absorbed").values;
  return s;
}

namespace {

std::uint64_t grid_key(const Potential& p, const Grid2D& g, const std::string& extra) {
  std::ostringstream os;
  os.precision(17);
  os << describe(p) << '|' << g.nx() << 'x' << g.nz() << '|' << g.dx() << ',' << g.dz() << '|' << extra;
  return fnv1a(os.str());
}

void record(TimeSeries& ts, const SpinorWavefunction& psi, const RunConfig& c, const Potential& pot,
            const std::optional<FluxLedger>& ledger) {
  const auto com = center_of_mass(psi, c.observables.com_window);
  const auto acc = acceleration(psi, pot, c.toggles, c.observables.ordering);
  ts.t.push_back(psi.time);
  ts.x.push_back(com.x);
  ts.z.push_back(com.z);
  ts.p_down.push_back(spin_down_population(psi));
  ts.a_x.push_back(acc.x);
  ts.a_z.push_back(acc.z);
  ts.a_x_plain.push_back(acc.x_plain);
  ts.a_z_plain.push_back(acc.z_plain);
  ts.norm.push_back(norm(psi));
  ts.absorbed.push_back(ledger ? ledger->absorbed_probability() : 0.0);
}

std::string changed_keys(const json& a, const json& b, const std::string& prefix = "") {
  std::string out;
  if (a.is_object() && b.is_object()) {
    for (auto it = a.begin(); it != a.end(); ++it) {
      const std::string key = prefix.empty() ? it.key() : prefix + "." + it.key();
      if (!b.contains(it.key())) {
        out += (out.empty() ? "" : ", ") + key;
        continue;
      }
      const auto sub = changed_keys(it.value(), b.at(it.key()), key);
      if (!sub.empty()) out += (out.empty() ? "" : ", ") + sub;
    }
    return out;
  }
  return a == b ? "" : prefix;
}

struct CheckpointPaths {
  fs::path dir, meta, state, ledger, records;
  explicit CheckpointPaths(const fs::path& out)
      : dir(out / "checkpoint"),
        meta(dir / "checkpoint.json"),
        state(dir / "state.snap"),
        ledger(dir / "ledger"),
        records(dir / "records.csv") {}
};

void write_checkpoint(const CheckpointPaths& p, const RunConfig& c, std::uint64_t hash, long step,
                      const SpinorWavefunction& psi, const std::optional<FluxLedger>& ledger, const TimeSeries& ts,
                      double initial_energy) {
  fs::create_directories(p.dir);
  fs::remove(p.meta);
  write_snapshot(p.state, psi, hash, static_cast<std::uint64_t>(step));
  if (ledger) ledger->save(p.ledger, hash);
  write_csv(p.records, ts.columns(), {hash});
  json meta = {{"config_hash", hex_hash(hash)},
               {"code_version", code_version()},
               {"step", step},
               {"has_ledger", ledger.has_value()},
               {"config", config_to_json(c)}};
  if (std::isfinite(initial_energy)) meta["initial_energy"] = initial_energy;
  write_json(p.meta, meta);
}

}  // namespace

Field ground_state(const Potential& potential, const Grid2D& grid, const fs::path& cache, double* energy) {
  const RelaxOptions opts;
  const auto key = grid_key(potential, grid, "ground");
  const fs::path file = cache.empty() ? fs::path() : cache / ("ground_" + hex_hash(key) + ".snap");
  Field f;
  bool loaded = false;
  if (!file.empty() && fs::exists(file)) {
    try {
      SnapshotHeader h;
      auto psi = read_snapshot(file, &h);
      if (h.toggles_hash == key && psi.grid == grid) {
        f = std::move(psi.up);
        loaded = true;
      }
    } catch (const std::runtime_error&) {
    }
  }
  if (!loaded) {
    auto r = imaginary_time_relax(potential, grid, 1, opts);
    f = r.states.front().up;
    if (!file.empty()) {
      fs::create_directories(cache);
      write_snapshot(file, spin_up(grid, f), key);
    }
  }
  if (energy) *energy = energy_and_variance(f, potential, grid).first;
  return f;
}

SpinorWavefunction initial_state(const RunConfig& c, const fs::path& cache, double* energy) {
  const auto grid = c.make_grid();
  Field f;
  if (c.initial.kind == "ground") {
    f = ground_state(c.make_potential(), grid, cache, energy);
  } else {
    f = gaussian_field(grid, c.initial.x0, c.initial.z0, c.initial.sx, c.initial.sz, c.initial.kx, c.initial.kz);
    if (energy) *energy = std::numeric_limits<double>::quiet_NaN();
  }
  SpinorWavefunction psi(grid);
  if (c.initial.spin == "up") {
    psi.up = std::move(f);
  } else if (c.initial.spin == "down") {
    psi.down = std::move(f);
  } else {
    const double r = 1.0 / std::sqrt(2.0);
    for (std::size_t n = 0; n < f.size(); ++n) {
      psi.up[n] = r * f[n];
      psi.down[n] = Complex(0, r) * f[n];
    }
  }
  return psi;
}

std::pair<double, double> spectrum_window(const RunConfig& c) {
  const double end = c.total_time();
  if (!c.laser.enabled || c.observables.spectrum_include_turn_on) return {0.0, end};
  return {c.make_laser()->t_on, end};
}

SpectrumRecord series_spectrum(const RunConfig& c, const TimeSeries& s, const std::string& channel) {
  std::vector<double> v;
  if (channel == "x") {
    v = s.a_x;
  } else if (channel == "z") {
    v = s.a_z;
  } else if (channel == "dipole_x" || channel == "dipole_z") {
    if (s.size() < 3) throw ConfigError("record too short for a dipole spectrum");
    v = second_derivative(channel == "dipole_x" ? s.x : s.z, s.t[1] - s.t[0]);
  } else if (channel == "spin") {
    v = s.p_down;
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(std::max<std::size_t>(1, v.size()));
    for (auto& e : v) e -= mean;
  } else {
    throw ConfigError("unknown spectrum channel '" + channel + "' (x, z, dipole_x, dipole_z, spin)");
  }
  const auto [t0, t1] = spectrum_window(c);
  auto rec = radiation_spectrum(s.t, v, t0, t1, c.laser.omega, channel);
  std::ostringstream os;
  os.precision(17);
  os << "hanning[" << t0 << "," << t1 << "]";
  rec.window = os.str();
  return rec;
}

PhotoelectronResult photoelectron_spectra(const RunConfig& c, const SpinorWavefunction& final_state,
                                          const FluxLedger& ledger, double X_I, double X_0) {
  PhotoelectronResult r;
  const auto pot = c.make_potential();
  if (X_I < 0) X_I = std::holds_alternative<FreeSpace>(pot) ? 0.0 : 5.0 * ground_state_radius(pot);
  r.window = {X_I, X_0};
  r.window.validate(final_state.grid);
  const auto residual = slice_residual(final_state, r.window);
  r.momentum = momentum_spectrum(ledger, residual, final_state.time);
  r.energy = energy_spectrum(r.momentum.density(), final_state.grid, c.toggles.c());
  return r;
}

void write_photoelectron(const fs::path& dir, const PhotoelectronResult& r, const RecordStamp& stamp,
                         int absorber_cadence) {
  const auto& g = r.momentum.grid;
  std::vector<std::size_t> order(g.nx());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return g.kx(a) < g.kx(b); });
  const auto d = r.momentum.density(), du = r.momentum.density_up(), dd = r.momentum.density_down();
  Column k{"k", "au", {}}, c0{"density", "1/au", {}}, c1{"density_up", "1/au", {}},
      c2{"density_down", "1/au", {}};
  for (auto i : order) {
    k.values.push_back(g.kx(i));
    c0.values.push_back(d[i]);
    c1.values.push_back(du[i]);
    c2.values.push_back(dd[i]);
  }
  write_csv(dir / "momentum.csv", {k, c0, c1, c2}, stamp);

  const auto& e = r.energy;
  std::vector<double> ev(e.energy.size()), neg(e.energy.size());
  for (std::size_t n = 0; n < ev.size(); ++n) {
    ev[n] = e.energy[n] * constants::hartree_eV;
    neg[n] = interpolate(e.negative.energy, e.negative.density, e.energy[n]);
  }
  write_csv(dir / "pes.csv",
            {{"energy_eV", "eV", ev},
             {"energy", "hartree", e.energy},
             {"density", "1/hartree", e.combined},
             {"density_positive", "1/hartree", e.positive.density},
             {"density_negative", "1/hartree", neg}},
            stamp);
  write_json(dir / "pes.json", {{"config_hash", hex_hash(stamp.config_hash)},
                                {"code_version", stamp.code_version},
                                {"X_I_bohr", r.window.X_I},
                                {"X_0_bohr", r.window.X_0},
                                {"absorber_cadence_steps", absorber_cadence},
                                {"total_probability", r.momentum.total_probability()},
                                {"flux_propagation", "free, x kinetic phase only; z motion of absorbed flux ignored"}});
}

RunResult run(const RunConfig& config, const RunOptions& opt) {
  config.validate();
  require_excursion_fits(config);
  RunResult res;
  res.config = config;
  res.config_hash = config_hash(config);
  const auto hash = res.config_hash;
  const RecordStamp stamp{hash};

  PropagatorSettings s;
  s.grid = config.make_grid();
  s.potential = config.make_potential();
  s.laser = config.make_laser();
  s.toggles = config.toggles;
  s.dt = config.dt;
  if (config.absorber.enabled) {
    MaskFunction m = MaskFunction::default_for(s.grid);
    if (config.absorber.width_x > 0) m.width_x = config.absorber.width_x;
    if (config.absorber.width_z > 0) m.width_z = config.absorber.width_z;
    s.absorber = m;
    s.absorber_cadence = config.absorber.cadence;
  }
  Propagator prop(s);

  const CheckpointPaths cp(opt.output_dir);
  SpinorWavefunction psi;
  std::optional<FluxLedger> ledger;
  TimeSeries& ts = res.series;
  long step = 0;

  if (opt.resume) {
    if (!fs::exists(cp.meta)) throw ConfigError("no checkpoint to resume in " + cp.dir.string());
    json meta;
    try {
      meta = read_json(cp.meta);
    } catch (const std::runtime_error& e) {
      throw ConfigError(std::string("corrupt checkpoint: ") + e.what());
    }
    if (meta.value("config_hash", std::string()) != hex_hash(hash)) {
      const auto diff = changed_keys(meta.value("config", json::object()), config_to_json(config));
      throw ConfigError("checkpoint was written for config " + meta.value("config_hash", std::string("?")) +
                        ", current config is " + hex_hash(hash) + (diff.empty() ? "" : " (changed: " + diff + ")") +
                        "; refusing to resume");
    }
    SnapshotHeader h;
    try {
      psi = read_snapshot(cp.state, &h);
    } catch (const std::runtime_error& e) {
      throw ConfigError(std::string("corrupt checkpoint snapshot: ") + e.what());
    }
    if (h.toggles_hash != hash || !(psi.grid == s.grid))
      throw ConfigError("checkpoint snapshot does not belong to this config; refusing to resume");
    step = static_cast<long>(h.step);
    if (config.absorber.enabled) {
      try {
        ledger = FluxLedger::load(cp.ledger);
      } catch (const std::runtime_error& e) {
        throw ConfigError(std::string("ATI integrity: ") + e.what());
      }
    }
    try {
      ts = TimeSeries::from_columns(read_csv(cp.records));
    } catch (const std::exception& e) {
      throw ConfigError(std::string("corrupt checkpoint records: ") + e.what());
    }
    res.initial_energy = meta.contains("initial_energy") ? meta["initial_energy"].get<double>()
                                                         : std::numeric_limits<double>::quiet_NaN();
  } else {
    psi = initial_state(config, opt.eigen_cache, &res.initial_energy);
    if (config.absorber.enabled) ledger.emplace(s.grid);
    record(ts, psi, config, s.potential, ledger);
  }
  prop.set_steps(step);

  const long total = config.total_steps();
  const int cadence = config.record_cadence();
  res.total_steps = total;
  const long report_every = std::max(1L, total / 100);
  while (step < total) {
    auto absorbed = prop.step(psi);
    ++step;
    if (absorbed && ledger) ledger->accumulate(*absorbed);
    if (step % cadence == 0) record(ts, psi, config, s.potential, ledger);
    if (opt.progress && step % report_every == 0) opt.progress(step, total);
    const bool stop = opt.stop_after_step >= 0 && step >= opt.stop_after_step && step < total;
    if (stop || (config.checkpoint_every > 0 && step % config.checkpoint_every == 0 && step < total)) {
      if (opt.write_outputs || stop) write_checkpoint(cp, config, hash, step, psi, ledger, ts, res.initial_energy);
    }
    if (stop) {
      res.steps_done = step;
      res.final_state = std::move(psi);
      res.ledger = std::move(ledger);
      return res;
    }
  }
  res.steps_done = step;
  res.completed = true;

  if (opt.write_outputs) {
    const auto& dir = opt.output_dir;
    fs::create_directories(dir);
    write_csv(dir / "timeseries.csv", ts.columns(), stamp);
    json files = json::array({"timeseries.csv", "final.snap"});
    json spectra = json::object();
    std::vector<std::string> channels{"x", "z"};
    if (config.toggles.spin_coupled()) channels.push_back("spin");
    for (const auto& ch : channels) {
      try {
        const auto rec = series_spectrum(config, ts, ch);
        write_spectrum_csv(dir / ("spectrum_" + ch + ".csv"), rec, stamp);
        files.push_back("spectrum_" + ch + ".csv");
        spectra[ch] = {{"window", rec.window}, {"resolution_omega", rec.resolution}};
      } catch (const ConfigError&) {
      }
    }
    write_snapshot(dir / "final.snap", psi, hash, static_cast<std::uint64_t>(step));
    if (ledger) {
      ledger->save(dir / "ledger", hash);
      files.push_back("ledger.snap");
    }
    if (config.photoelectron.enabled && ledger) {
      const auto pe = photoelectron_spectra(config, psi, *ledger, config.photoelectron.X_I, config.photoelectron.X_0);
      write_photoelectron(dir, pe, stamp, config.absorber.cadence);
      files.push_back("pes.csv");
      files.push_back("momentum.csv");
    }
    json manifest = {{"name", config.name},
                     {"config_hash", hex_hash(hash)},
                     {"code_version", code_version()},
                     {"config", config_to_json(config)},
                     {"steps", step},
                     {"record_every_steps", cadence},
                     {"final_time_au", psi.time},
                     {"final_norm", norm(psi)},
                     {"absorbed_probability", ledger ? ledger->absorbed_probability() : 0.0},
                     {"spectra", spectra},
                     {"files", files}};
    if (std::isfinite(res.initial_energy)) manifest["initial_energy_hartree"] = res.initial_energy;
    write_json(dir / "manifest.json", manifest);
  }
  res.final_state = std::move(psi);
  res.ledger = std::move(ledger);
  return res;
}

namespace {

json level_json(const EigenLevel& l) {
  return {{"energy", l.energy},         {"linewidth", l.linewidth}, {"label", l.label},
          {"members", l.members},       {"variance", l.variance},   {"near_degenerate", l.near_degenerate}};
}

}  // namespace

EigenResult cached_eigenstates(const RunConfig& c, const std::string& method, const fs::path& cache) {
  if (method != "spectral" && method != "imaginary") throw ConfigError("eigen method must be spectral or imaginary");
  const auto pot = c.make_potential();
  const auto grid = c.make_grid();
  std::ostringstream extra;
  extra.precision(17);
  extra << method << '|' << c.eigen.n_levels << '|' << c.eigen.t_total << '|' << c.eigen.dt;
  const auto key = grid_key(pot, grid, extra.str());
  const fs::path dir = cache.empty() ? fs::path() : cache / ("eigen_" + hex_hash(key));
  if (!dir.empty() && fs::exists(dir / "levels.json")) {
    try {
      const auto j = read_json(dir / "levels.json");
      EigenResult r;
      r.grid = grid;
      for (const auto& l : j.at("levels")) {
        EigenLevel e;
        e.energy = l.at("energy");
        e.linewidth = l.at("linewidth");
        e.label = l.at("label");
        e.members = l.at("members").get<std::vector<std::size_t>>();
        e.variance = l.at("variance");
        e.near_degenerate = l.at("near_degenerate");
        r.levels.push_back(e);
      }
      r.state_energies = j.at("state_energies").get<std::vector<double>>();
      for (std::size_t n = 0; n < r.state_energies.size(); ++n)
        r.states.push_back(read_snapshot(dir / ("state_" + std::to_string(n) + ".snap")));
      return r;
    } catch (const std::exception&) {
    }
  }
  EigenResult r;
  if (method == "spectral") {
    SpectralEigenOptions o;
    o.dt = c.eigen.dt;
    o.scan.t_total = c.eigen.t_total;
    o.n_levels = c.eigen.n_levels;
    r = spectral_eigenstates(pot, grid, o);
  } else {
    r = imaginary_time_relax(pot, grid, c.eigen.n_levels);
  }
  if (!dir.empty()) {
    fs::create_directories(dir);
    json levels = json::array();
    for (const auto& l : r.levels) levels.push_back(level_json(l));
    for (std::size_t n = 0; n < r.states.size(); ++n)
      write_snapshot(dir / ("state_" + std::to_string(n) + ".snap"), r.states[n], key);
    write_json(dir / "levels.json", {{"levels", levels}, {"state_energies", r.state_energies}});
  }
  return r;
}

json eigen_report(const EigenResult& r, const RunConfig& c) {
  const auto pot = c.make_potential();
  json levels = json::array();
  const double e0 = r.levels.empty() ? 0.0 : r.levels.front().energy;
  for (std::size_t n = 0; n < r.levels.size(); ++n) {
    const auto& l = r.levels[n];
    json j = level_json(l);
    j["energy_eV"] = l.energy * constants::hartree_eV;
    j["degeneracy"] = l.members.size();
    j["transition_from_lowest_omega"] = (l.energy - e0) / c.laser.omega;
    if (std::holds_alternative<SoftCorePotential>(pot)) {
      const auto so = field_free_so_splitting(r, n, pot, c.toggles.c());
      j["so_splitting_hartree"] = so.splitting;
      j["so_splitting_omega"] = so.splitting / c.laser.omega;
    }
    levels.push_back(j);
  }
  return {{"potential", describe(pot)},
          {"grid", {c.grid.nx, c.grid.nz, c.grid.dx, c.grid.dz}},
          {"omega_au", c.laser.omega},
          {"code_version", code_version()},
          {"levels", levels}};
}

json CompareReport::to_json() const {
  json s = json::array(), b = json::array();
  for (const auto& d : series) s.push_back({{"name", d.name}, {"max_abs", d.max_abs}, {"rms", d.rms}});
  for (const auto& x : bands)
    b.push_back({{"channel", x.channel},
                 {"band", {x.lo, x.hi}},
                 {"position_a", x.shift.position_a},
                 {"position_b", x.shift.position_b},
                 {"delta", x.shift.delta}});
  return {{"series", s}, {"bands", b}};
}

CompareReport compare_runs(const fs::path& a, const fs::path& b, const std::vector<std::pair<double, double>>& bands,
                           const std::vector<std::string>& channels) {
  CompareReport rep;
  std::vector<Column> ca, cb;
  try {
    ca = read_csv(a / "timeseries.csv");
    cb = read_csv(b / "timeseries.csv");
  } catch (const std::runtime_error& e) {
    throw ConfigError(e.what());
  }
  const auto& ta = find_column(ca, "t").values;
  const auto& tb = find_column(cb, "t").values;
  if (ta.size() != tb.size()) throw ConfigError("runs have different time axes (lengths differ)");
  for (std::size_t n = 0; n < ta.size(); ++n)
    if (std::abs(ta[n] - tb[n]) > 1e-9 * std::max(1.0, std::abs(ta[n])))
      throw ConfigError("runs have different time axes");
  for (const auto& col : ca) {
    if (col.name == "t") continue;
    const auto& other = find_column(cb, col.name).values;
    SeriesDiff d{col.name, 0.0, 0.0};
    double sq = 0.0;
    for (std::size_t n = 0; n < other.size(); ++n) {
      const double e = col.values[n] - other[n];
      d.max_abs = std::max(d.max_abs, std::abs(e));
      sq += e * e;
    }
    d.rms = other.empty() ? 0.0 : std::sqrt(sq / static_cast<double>(other.size()));
    rep.series.push_back(d);
  }
  for (const auto& ch : channels) {
    if (bands.empty()) break;
    SpectrumRecord sa, sb;
    try {
      sa = read_spectrum_csv(a / ("spectrum_" + ch + ".csv"));
      sb = read_spectrum_csv(b / ("spectrum_" + ch + ".csv"));
    } catch (const std::runtime_error& e) {
      throw ConfigError(e.what());
    }
    if (sa.frequency != sb.frequency) throw ConfigError("spectra of channel " + ch + " are on different axes");
    for (const auto& [lo, hi] : bands) {
      try {
        rep.bands.push_back({lo, hi, ch, line_shift(sa, sb, lo, hi)});
      } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
      } catch (const std::runtime_error& e) {
        throw NumericalError(e.what());
      }
    }
  }
  return rep;
}

}  // namespace fwion
