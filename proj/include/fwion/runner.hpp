#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fwion/config.hpp"
#include "fwion/eigensolver.hpp"
#include "fwion/photoelectron.hpp"
#include "fwion/records.hpp"
#include "fwion/spectrum.hpp"

namespace fwion {

/// Observables sampled at the recording cadence.
struct TimeSeries {
  std::vector<double> t, x, z, p_down, a_x, a_z, a_x_plain, a_z_plain, norm, absorbed;

  std::size_t size() const { return t.size(); }
  std::vector<Column> columns() const;
  static TimeSeries from_columns(const std::vector<Column>& cols);
};

struct RunOptions {
  std::filesystem::path output_dir;
  /// Continue from output_dir/checkpoint instead of starting fresh.
  bool resume = false;
  /// Write a checkpoint and return once this many steps are done (< 0: never).
  long stop_after_step = -1;
  /// Ground states are cached here by (potential, grid) hash; empty disables.
  std::filesystem::path eigen_cache;
  /// Skip writing output files (the result is still returned).
  bool write_outputs = true;
  std::function<void(long step, long total)> progress;
};

struct RunResult {
  RunConfig config;
  std::uint64_t config_hash = 0;
  TimeSeries series;
  SpinorWavefunction final_state;
  std::optional<FluxLedger> ledger;
  long steps_done = 0;
  long total_steps = 0;
  bool completed = false;
  /// <H_0> of the initial bound state, NaN for a Gaussian start.
  double initial_energy = 0.0;
};

/// Field-free nonrelativistic ground state, from the cache when possible.
Field ground_state(const Potential& potential, const Grid2D& grid, const std::filesystem::path& cache,
                   double* energy = nullptr);

/// Builds the initial spinor described by the config.
SpinorWavefunction initial_state(const RunConfig& config, const std::filesystem::path& cache,
                                 double* energy = nullptr);

/// Propagates the config, recording observables, feeding the flux ledger and
/// writing checkpoints. Outputs are written when the run completes.
/// Throws ConfigError (bad input, checkpoint mismatch) or NumericalError.
RunResult run(const RunConfig& config, const RunOptions& options);

/// Spectral window [t_begin, t_end] used for the radiation spectra.
std::pair<double, double> spectrum_window(const RunConfig& config);

/// Radiation spectrum of "x" (a_x), "z" (a_z) or "spin" (P_down) over the
/// config's spectral window, with frequencies in units of the laser omega.
SpectrumRecord series_spectrum(const RunConfig& config, const TimeSeries& series, const std::string& channel);

/// Photoelectron spectra of a finished run; X_I < 0 selects 5 ground-state
/// radii.
struct PhotoelectronResult {
  MomentumSpectrum momentum;
  EnergySpectrum energy;
  IonizationWindow window;
};
PhotoelectronResult photoelectron_spectra(const RunConfig& config, const SpinorWavefunction& final_state,
                                          const FluxLedger& ledger, double X_I, double X_0);

void write_photoelectron(const std::filesystem::path& dir, const PhotoelectronResult& r, const RecordStamp& stamp,
                         int absorber_cadence);

/// Eigen levels computed by "spectral" or "imaginary" and cached under
/// cache/<hash>/ when a cache directory is given.
EigenResult cached_eigenstates(const RunConfig& config, const std::string& method,
                               const std::filesystem::path& cache);
nlohmann::json eigen_report(const EigenResult& r, const RunConfig& config);

struct SeriesDiff {
  std::string name;
  double max_abs = 0.0;
  double rms = 0.0;
};

struct BandShift {
  double lo = 0.0, hi = 0.0;
  std::string channel;
  LineShift shift;
};

struct CompareReport {
  std::vector<SeriesDiff> series;
  std::vector<BandShift> bands;
  nlohmann::json to_json() const;
};

/// Differences between two run directories. Time series must share their
/// time axis and spectra their frequency axis (ConfigError otherwise).
CompareReport compare_runs(const std::filesystem::path& a, const std::filesystem::path& b,
                           const std::vector<std::pair<double, double>>& bands,
                           const std::vector<std::string>& channels = {"x"});

}  // namespace fwion
