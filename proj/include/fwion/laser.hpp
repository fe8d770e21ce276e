#pragma once

namespace fwion {

struct PulseFields {
  double A = 0.0;  // A_x
  double E = 0.0;  // E_x
  double B = 0.0;  // B_y
};

/// Linearly polarized plane-wave pulse along x, propagating along z, with a
/// linear turn-on of length t_on followed by a constant-amplitude plateau
/// until t_p. All quantities in atomic units; retarded time tau = t - z/c.
struct LaserPulse {
  double E0 = 0.0;
  double omega = 1.0;
  double t_on = 0.0;
  double t_p = 0.0;
  double c = 137.036;
  /// Turn-on length in cycles as requested, before snapping to (m + 1/4).
  double requested_turn_on_cycles = 0.0;

  double period() const;
  double turn_on_cycles() const;
  double plateau_cycles() const;
};

/// Builds a pulse whose turn-on is snapped to the nearest (m + 0.25) cycles,
/// m >= 0, which keeps A_x continuous at the end of the ramp.
/// Throws ConfigError for non-positive omega, c or negative durations.
LaserPulse make_laser_pulse(double E0, double omega, double turn_on_cycles, double plateau_cycles,
                            double c);

/// A_x, E_x, B_y at (z, t). For tau <= 0 everything vanishes. For tau >= t_p
/// E and B vanish and A stays at its value at t_p, so free evolution after
/// the pulse carries no spurious kick.
PulseFields pulse_fields(const LaserPulse& L, double z, double t, bool dipole_approximation = false);

struct StepAverage {
  double A = 0.0;   // mean A_x over the step
  double A2 = 0.0;  // mean A_x^2 over the step
};

/// Means of A_x and A_x^2 over [t0, t1] at height z. Each smooth piece of the
/// pulse is integrated separately, so the jump in A_x at the front is placed
/// exactly within the step.
StepAverage step_average(const LaserPulse& L, double z, double t0, double t1, bool dipole_approximation = false);

}  // namespace fwion
