#pragma once

#include <filesystem>
#include <vector>

#include "fwion/absorber.hpp"
#include "fwion/spinor.hpp"

namespace fwion {

/// Running sum of absorbed amplitude in the mixed (k_x, z) representation.
/// Each contribution is multiplied by exp(+i k_x^2 t_a / 2) on entry, so a
/// final factor exp(-i k_x^2 t_f / 2) free-propagates all of them to t_f.
class FluxLedger {
 public:
  FluxLedger() = default;
  explicit FluxLedger(const Grid2D& grid);

  const Grid2D& grid() const { return grid_; }
  /// Adds the flux stamped at flux.time.
  void accumulate(const SpinorWavefunction& flux, double removed_probability);
  void accumulate(const Absorption& a) { accumulate(a.flux, a.removed_probability); }

  /// Sum of removed probabilities.
  double absorbed_probability() const { return absorbed_; }
  long entries() const { return entries_; }
  const Field& up() const { return up_; }
  const Field& down() const { return down_; }

  /// Snapshot of the accumulator plus a JSON sidecar with the counters.
  void save(const std::filesystem::path& stem, std::uint64_t toggles_hash) const;
  /// Throws std::runtime_error if either file is missing or corrupt.
  static FluxLedger load(const std::filesystem::path& stem);

 private:
  Grid2D grid_;
  Field up_, down_;
  double absorbed_ = 0.0;
  long entries_ = 0;
};

/// Sliding window separating the ionized part of the final wavefunction:
/// zero for |x| < X_I, sin^2 ramp over [X_I, X_I + X_0], one beyond.
struct IonizationWindow {
  double X_I = 0.0;
  double X_0 = 10.0;

  /// Throws ConfigError unless X_I >= 0, X_0 >= 0 and X_I + X_0 < x_max.
  void validate(const Grid2D& g) const;
  double factor(double x) const;
};

SpinorWavefunction slice_residual(const SpinorWavefunction& psi, const IonizationWindow& window);

/// Psi_p(k_x, z) per spin component.
struct MomentumSpectrum {
  Grid2D grid;
  Field up, down;
  /// Probability density in k_x: sum_z (|up|^2 + |down|^2) dz dx / dk_x,
  /// FFT ordered like grid.kxs().
  std::vector<double> density() const;
  std::vector<double> density_up() const;
  std::vector<double> density_down() const;
  double total_probability() const;
};

/// FFT_x[psi_out] + exp(-i k_x^2 t_f / 2) * ledger.
MomentumSpectrum momentum_spectrum(const FluxLedger& ledger, const SpinorWavefunction& psi_out, double t_f);

/// epsilon = p^2/2 - p^4/8c^2
double kinetic_energy(double p, double c);
/// (1 + eps/c^2) / sqrt(2 eps)
double energy_jacobian(double eps, double c);

struct EnergyBranch {
  std::vector<double> energy;   // a.u., ascending
  std::vector<double> density;  // probability per hartree
};

struct EnergySpectrum {
  EnergyBranch positive;  // kinetic p_x > 0
  EnergyBranch negative;  // kinetic p_x < 0
  /// Both branches on the positive branch's energy axis.
  std::vector<double> energy;
  std::vector<double> combined;
};

/// Maps the canonical k_x density onto epsilon with the Jacobian. A_x depends
/// only on (z, t), so k_x is the momentum left once the field is off. The
/// point k = 0 is dropped. Throws ConfigError if the lattice reaches momenta
/// where epsilon(p) stops increasing.
EnergySpectrum energy_spectrum(const std::vector<double>& density, const Grid2D& grid, double c);

/// Linear interpolation of (x, y) at `at`; zero outside the sampled range.
double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at);

/// Linear resampling of `values` given on `energy` to a uniform axis of
/// spacing d_eps from d_eps up to the largest energy.
std::pair<std::vector<double>, std::vector<double>> resample_uniform(const std::vector<double>& energy,
                                                                     const std::vector<double>& values,
                                                                     double d_eps);

}  // namespace fwion
