#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "fwion/config.hpp"
#include "fwion/runner.hpp"
#include "fwion/scenario.hpp"
#include "fwion/snapshot.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fwion;

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

fs::path output_root() {
  const char* env = std::getenv("FWION_OUTPUT_ROOT");
  return env && *env ? fs::path(env) : fs::path("fwion_runs");
}

struct ConfigSource {
  std::string scenario;
  std::string file;
  double scale = 1.0;
  std::vector<std::string> overrides;

  void attach(CLI::App* cmd) {
    auto* s = cmd->add_option("-s,--scenario", scenario, "catalog scenario name");
    auto* f = cmd->add_option("-c,--config", file, "JSON config file");
    s->excludes(f);
    cmd->add_option("--scale", scale, "divide plateau and free cycles by this factor")->check(CLI::Range(1.0, 1e6));
    cmd->add_option("--set", overrides, "override a config value, e.g. --set laser.plateau_cycles=5");
  }

  RunConfig build() const {
    json j;
    if (!scenario.empty()) {
      j = config_to_json(scenario_config(scenario, scale));
    } else if (!file.empty()) {
      std::ifstream is(file);
      if (!is) throw ConfigError("cannot open config " + file);
      try {
        j = json::parse(is);
      } catch (const json::parse_error& e) {
        throw ConfigError(file + ": " + e.what());
      }
      if (scale != 1.0) throw ConfigError("--scale only applies to catalog scenarios");
    } else {
      throw ConfigError("give --scenario NAME or --config FILE");
    }
    for (const auto& o : overrides) apply_override(j, o);
    return config_from_json(j);
  }
};

fs::path default_dir(const RunConfig& c) { return output_root() / (c.name + "-" + hex_hash(config_hash(c))); }

RunConfig manifest_config(const fs::path& run_dir) {
  const auto m = read_json(run_dir / "manifest.json");
  return config_from_json(m.at("config"));
}

int cmd_catalog(bool as_json) {
  if (as_json) {
    json j = json::array();
    for (const auto& s : scenario_catalog())
      j.push_back({{"name", s.name}, {"description", s.description}, {"at_reduced_scale", s.at_reduced_scale}});
    std::cout << j.dump(2) << "\n";
    return 0;
  }
  for (const auto& s : scenario_catalog()) {
    const auto c = scenario_config(s.name);
    std::cout << s.name << "\n  " << s.description << "\n  grid " << c.grid.nx << "x" << c.grid.nz << " d="
              << c.grid.dx << ", dt=" << c.dt << ", " << c.total_steps() << " steps\n  reduced scale: "
              << s.at_reduced_scale << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weakly relativistic laser-ion dynamics on a 2D grid"};
  app.require_subcommand(1);
  app.set_version_flag("--version", code_version());

  bool catalog_json = false;
  auto* catalog = app.add_subcommand("catalog", "list the built-in scenarios");
  catalog->add_flag("--json", catalog_json, "print as JSON");

  ConfigSource run_src;
  std::string run_out;
  bool resume = false, print_config = false, quiet = false;
  long stop_after = -1;
  auto* run_cmd = app.add_subcommand("run", "propagate a scenario or config and write its outputs");
  run_src.attach(run_cmd);
  run_cmd->add_option("-o,--out", run_out, "output directory (default: $FWION_OUTPUT_ROOT/<name>-<hash>)");
  run_cmd->add_flag("--resume", resume, "continue from the checkpoint in the output directory");
  run_cmd->add_option("--stop-after", stop_after, "checkpoint and stop after this many steps");
  run_cmd->add_flag("--print-config", print_config, "print the resolved config and exit");
  run_cmd->add_flag("-q,--quiet", quiet, "no progress output");

  ConfigSource eig_src;
  std::string eig_out, eig_method = "both";
  auto* eig_cmd = app.add_subcommand("eigen", "field-free levels of the configured potential");
  eig_src.attach(eig_cmd);
  eig_cmd->add_option("-m,--method", eig_method, "spectral, imaginary or both")
      ->check(CLI::IsMember({"spectral", "imaginary", "both"}));
  eig_cmd->add_option("-o,--out", eig_out, "output directory");

  std::string pes_run;
  double pes_xi = -1.0, pes_x0 = -1.0;
  auto* pes_cmd = app.add_subcommand("pes", "recompute photoelectron spectra of a finished run");
  pes_cmd->add_option("run", pes_run, "run directory")->required();
  pes_cmd->add_option("--xi", pes_xi, "bound-region radius X_I in bohr (default from the run config)");
  pes_cmd->add_option("--x0", pes_x0, "sliding width X_0 in bohr (default from the run config)");

  std::string spec_run, spec_channel = "x";
  int spec_harmonics = 0;
  auto* spec_cmd = app.add_subcommand("spectrum", "recompute a radiation spectrum of a finished run");
  spec_cmd->add_option("run", spec_run, "run directory")->required();
  spec_cmd->add_option("--channel", spec_channel, "x, z, dipole_x, dipole_z or spin");
  spec_cmd->add_option("--harmonics", spec_harmonics, "also report odd-harmonic strengths up to this order");

  std::string cmp_a, cmp_b;
  std::vector<std::string> cmp_bands, cmp_channels{"x"};
  auto* cmp_cmd = app.add_subcommand("compare", "difference report between two run directories");
  cmp_cmd->add_option("a", cmp_a, "first run directory")->required();
  cmp_cmd->add_option("b", cmp_b, "second run directory")->required();
  cmp_cmd->add_option("--band", cmp_bands, "spectral band lo:hi in units of omega");
  cmp_cmd->add_option("--channel", cmp_channels, "spectrum channels to compare");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  try {
    if (*catalog) return cmd_catalog(catalog_json);

    if (*run_cmd) {
      const auto cfg = run_src.build();
      if (print_config) {
        std::cout << config_to_json(cfg).dump(2) << "\nconfig_hash " << hex_hash(config_hash(cfg)) << "\n";
        return 0;
      }
      RunOptions opt;
      opt.output_dir = run_out.empty() ? default_dir(cfg) : fs::path(run_out);
      opt.resume = resume;
      opt.stop_after_step = stop_after;
      opt.eigen_cache = output_root() / "eigen_cache";
      if (!quiet)
        opt.progress = [](long s, long t) { std::cerr << "\rstep " << s << "/" << t << std::flush; };
      const auto r = run(cfg, opt);
      if (!quiet) std::cerr << "\n";
      std::cout << (r.completed ? "completed " : "checkpointed ") << r.steps_done << "/" << r.total_steps
                << " steps in " << opt.output_dir.string() << "\n";
      return 0;
    }

    if (*eig_cmd) {
      const auto cfg = eig_src.build();
      const fs::path dir = eig_out.empty() ? output_root() / (cfg.name + "-eigen") : fs::path(eig_out);
      const fs::path cache = output_root() / "eigen_cache";
      json out;
      for (const std::string m : {"spectral", "imaginary"}) {
        if (eig_method != "both" && eig_method != m) continue;
        const auto r = cached_eigenstates(cfg, m, cache);
        out[m] = eigen_report(r, cfg);
        for (const auto& l : r.levels)
          std::cout << m << "  E=" << l.energy << "  " << l.label << "  x" << l.members.size() << "\n";
      }
      out["config_hash"] = hex_hash(config_hash(cfg));
      write_json(dir / "levels.json", out);
      return 0;
    }

    if (*pes_cmd) {
      const fs::path dir = pes_run;
      const auto cfg = manifest_config(dir);
      if (!cfg.photoelectron.enabled && !cfg.absorber.enabled)
        throw ConfigError("run has no absorber, so there is no flux ledger");
      SnapshotHeader h;
      const auto psi = read_snapshot(dir / "final.snap", &h);
      const auto ledger = FluxLedger::load(dir / "ledger");
      const auto r = photoelectron_spectra(cfg, psi, ledger, pes_xi >= 0 ? pes_xi : cfg.photoelectron.X_I,
                                           pes_x0 >= 0 ? pes_x0 : cfg.photoelectron.X_0);
      write_photoelectron(dir, r, {config_hash(cfg)}, cfg.absorber.cadence);
      std::cout << "photoelectron probability " << r.momentum.total_probability() << "\n";
      return 0;
    }

    if (*spec_cmd) {
      const fs::path dir = spec_run;
      const auto cfg = manifest_config(dir);
      const auto ts = TimeSeries::from_columns(read_csv(dir / "timeseries.csv"));
      const auto rec = series_spectrum(cfg, ts, spec_channel);
      write_spectrum_csv(dir / ("spectrum_" + spec_channel + ".csv"), rec, {config_hash(cfg)});
      std::cout << "window " << rec.window << ", resolution " << rec.resolution << " omega\n";
      if (spec_harmonics > 0) {
        const auto h = harmonic_strengths(rec, spec_harmonics);
        for (int n = 1; n <= spec_harmonics; n += 2) std::cout << n << " " << h[n - 1] << "\n";
        std::cout << "cutoff " << harmonic_cutoff(h) << "\n";
      }
      return 0;
    }

    if (*cmp_cmd) {
      std::vector<std::pair<double, double>> bands;
      for (const auto& b : cmp_bands) {
        const auto colon = b.find(':');
        if (colon == std::string::npos) throw ConfigError("band must look like lo:hi, got " + b);
        try {
          bands.emplace_back(std::stod(b.substr(0, colon)), std::stod(b.substr(colon + 1)));
        } catch (const std::exception&) {
          throw ConfigError("band must look like lo:hi, got " + b);
        }
      }
      std::cout << compare_runs(cmp_a, cmp_b, bands, cmp_channels).to_json().dump(2) << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kConfigError;
  }
  return 0;
}
