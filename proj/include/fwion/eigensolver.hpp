#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fwion/potential.hpp"
#include "fwion/propagator.hpp"
#include "fwion/spinor.hpp"

namespace fwion {

/// Gaussian test packet for the spectral method.
struct ProbePacket {
  double x0 = 0.0, z0 = 0.0;
  double sx = 1.0, sz = 1.0;
};

/// Length scale of the lowest state: 1/sqrt(omega_h) of the harmonic
/// approximation at the bottom of the well. Throws ConfigError for a
/// potential without a bound minimum.
double ground_state_radius(const Potential& p);

/// Off-centre, off-axis packet that breaks both reflection symmetries and
/// overlaps the lowest handful of levels.
ProbePacket default_probe(const Potential& p);

/// Same packet rotated about the origin by `angle` radians.
ProbePacket rotated(const ProbePacket& p, double angle);

struct ScanOptions {
  double t_total = 20.0;
  int sample_every = 1;
  int pad_factor = 8;
  double e_min = -1e300;
  double e_max = 1e300;
  /// Lines weaker than this fraction of the strongest one are ignored.
  double rel_threshold = 1e-3;
  /// Fewer lines than this is an error (record too short to separate them).
  std::size_t min_lines = 1;
};

struct SpectralLine {
  double energy = 0.0;
  double strength = 0.0;
  double linewidth = 0.0;
};

struct SpectralScan {
  std::vector<SpectralLine> lines;  // ascending in energy
  std::vector<double> energy;       // axis, ascending
  std::vector<double> amplitude;    // windowed transform of the autocorrelation
  std::vector<double> times;
  std::vector<Complex> autocorrelation;
  double linewidth = 0.0;
};

/// Propagates `probe` with the field-free `settings` for t_total, records
/// c(t) = <psi(0)|psi(t)>, extends it to negative times with
/// c(-t) = conj(c(t)), applies a Hanning window over [-T, T] and locates
/// the lines of its Fourier transform. Throws NumericalError if fewer than
/// opts.min_lines lines are found.
SpectralScan autocorrelation_scan(const SpinorWavefunction& probe, const PropagatorSettings& settings,
                                  const ScanOptions& opts);

/// Scalar field-free scan of `potential` with a Gaussian probe.
SpectralScan spectral_scan(const Potential& potential, const Grid2D& grid, double dt, const ProbePacket& probe,
                           const ScanOptions& opts);

/// Re-propagates the real probe and returns, for each energy, the
/// normalized sum_t w(t) exp(iEt) psi(t) over [-T, T]. The field-free
/// Hamiltonian is real, so psi(-t) = conj(psi(t)) and the result is real.
std::vector<Field> project_states(const Potential& potential, const Grid2D& grid, double dt,
                                  const ProbePacket& probe, double t_total, const std::vector<double>& energies);

struct EigenLevel {
  double energy = 0.0;
  double linewidth = 0.0;
  /// "symmetric" (even under inversion) or "asymmetric".
  std::string label;
  /// Indices into EigenResult::states spanning this level.
  std::vector<std::size_t> members;
  /// Largest <H^2> - <H>^2 among the members.
  double variance = 0.0;
  bool near_degenerate = false;
};

struct EigenResult {
  Grid2D grid;
  std::vector<EigenLevel> levels;
  std::vector<SpinorWavefunction> states;
  std::vector<double> state_energies;  // <H> of each state
};

struct SpectralEigenOptions {
  double dt = 0.005;
  ScanOptions scan;
  std::size_t n_levels = 5;
  /// Extra probes rotated by these angles pick up degenerate partners.
  std::vector<double> extra_probe_angles{1.1, 2.3};
  /// A projected candidate joins a level if this fraction of it survives
  /// orthogonalization against the states already found.
  double multiplet_threshold = 0.2;
};

EigenResult spectral_eigenstates(const Potential& potential, const Grid2D& grid, const SpectralEigenOptions& opts);

struct RelaxOptions {
  double dtau = 0.01;
  long max_steps = 50000;
  double tolerance = 1e-10;
  /// States closer than this (relative) form one level.
  double degeneracy_tolerance = 1e-5;
};

/// Imaginary-time relaxation with Gram-Schmidt deflation, lowest first.
/// Throws NumericalError if a state does not converge within max_steps.
EigenResult imaginary_time_relax(const Potential& potential, const Grid2D& grid, std::size_t n_states,
                                 const RelaxOptions& opts = {});

/// H_0 psi for the field-free nonrelativistic Hamiltonian.
Field apply_field_free_hamiltonian(const Field& psi, const Potential& potential, const Grid2D& grid);

/// <H_0> and <H_0^2> - <H_0>^2 of a normalized field.
std::pair<double, double> energy_and_variance(const Field& psi, const Potential& potential, const Grid2D& grid);

struct SoSplitting {
  double splitting = 0.0;  // hartree
  /// Eigenvalues of f L_y in the level's subspace; H_so = sigma_y (x) f L_y.
  std::vector<double> subspace_eigenvalues;
};

/// Diagonalizes the field-free spin-orbit operator inside the subspace of
/// one level. The splitting is max - min of the eigenvalues of
/// sigma_y (x) f L_y there.
SoSplitting field_free_so_splitting(const EigenResult& result, std::size_t level, const Potential& potential,
                                    double c);

/// f(x,z) (z p_x - x p_z) psi.
Field apply_f_ly(const Field& psi, const Potential& potential, const Grid2D& grid, double c);

}  // namespace fwion
