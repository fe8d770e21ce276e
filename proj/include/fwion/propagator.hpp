#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "fwion/absorber.hpp"
#include "fwion/fourier.hpp"
#include "fwion/laser.hpp"
#include "fwion/potential.hpp"
#include "fwion/spinor.hpp"
#include "fwion/toggles.hpp"

namespace fwion {

/// Everything a time step needs: the Hamiltonian pieces, dt, and the phase
/// tables that depend only on them.
struct PropagatorSettings {
  Grid2D grid;
  Potential potential = FreeSpace{};
  std::optional<LaserPulse> laser;
  TermToggles toggles;
  double dt = 0.01;
  std::optional<MaskFunction> absorber;
  /// Mask applied after every `absorber_cadence`-th step.
  int absorber_cadence = 1;
};

/// Symmetric split-operator stepper for the two-component weakly relativistic
/// Hamiltonian. One step applies
///
///   K/2 . X/2 . P/2 . S . P/2 . X/2 . K/2
///
/// with K the kinetic term p^2/2 (- p^4/8c^2) in (kx, kz) space, X the
/// p_x A_x(z,t)/c coupling in the mixed (kx, z) representation, P the
/// position-diagonal part V + A^2/2c^2 (+ H_D), and S the spin block
/// exp[-i dt (H_P + H_so)] expanded to second order in dt. Time-dependent
/// pieces are evaluated at the step midpoint, so the scheme is time
/// reversible and globally second order.
class Propagator {
 public:
  explicit Propagator(PropagatorSettings settings);

  const PropagatorSettings& settings() const { return s_; }
  double dt() const { return s_.dt; }
  double c() const { return s_.toggles.c(); }

  /// Advances psi from psi.time to psi.time + dt. If the absorber fires on
  /// this step the removed part is returned.
  std::optional<Absorption> step(SpinorWavefunction& psi);

  /// exp[-i dt (H_P + H_so)] at time t, Taylor expanded to O(dt^2).
  void apply_spin_block(SpinorWavefunction& psi, double t) const;

  /// Applies (H_P + H_so) at time t to (up, down) -> (h_up, h_down) without
  /// the sigma_y structure, i.e. the scalar operator h with H = sigma_y h.
  void apply_spin_scalar(const Field& in, Field& out, double t) const;

  /// Steps taken since construction.
  long steps() const { return steps_; }
  void set_steps(long n) { steps_ = n; }

  const std::vector<double>& mask() const { return mask_; }

 private:
  struct RowFields {
    std::vector<double> A, E, B, A2;
  };
  RowFields row_fields(double t) const;
  RowFields step_potential(double t0) const;
  void build_x_phase(const RowFields& rows, Field& table) const;
  void build_p_row_phase(const RowFields& rows, std::vector<Complex>& out) const;
  void half_kinetic_then_x(Complex* f, const Field& xphase) const;
  void x_then_half_kinetic(Complex* f, const Field& xphase) const;
  void position_half(Complex* f, const std::vector<Complex>& rowphase) const;
  void momentum_derivatives(const Field& in, Field& px, Field& pz) const;

  PropagatorSettings s_;
  std::shared_ptr<const Fourier> fourier_;
  Field kinetic_half_;          // includes 1/(nx nz) normalization
  Field potential_half_;        // exp(-i dt/2 (V + H_D))
  std::vector<double> so_f_;    // f(x, z) when spin-orbit is on
  std::vector<double> mask_;
  long steps_ = 0;
  // Work buffers for the spin block.
  mutable Field hu_, hd_, hhu_, hhd_, wx_, wz_, wk_;
};

}  // namespace fwion
