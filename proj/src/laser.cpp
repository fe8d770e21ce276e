#include "fwion/laser.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "fwion/toggles.hpp"
#include "fwion/types.hpp"

namespace fwion {

double LaserPulse::period() const { return 2.0 * std::numbers::pi / omega; }
double LaserPulse::turn_on_cycles() const { return t_on / period(); }
double LaserPulse::plateau_cycles() const { return (t_p - t_on) / period(); }

LaserPulse make_laser_pulse(double E0, double omega, double turn_on_cycles, double plateau_cycles,
                            double c) {
  if (!(omega > 0.0)) throw ConfigError("laser frequency must be positive");
  if (!(c > 0.0)) throw ConfigError("speed of light must be positive");
  if (turn_on_cycles < 0.0 || plateau_cycles < 0.0 || !(E0 >= 0.0))
    throw ConfigError("pulse durations and amplitude must be non-negative");
  LaserPulse L;
  L.E0 = E0;
  L.omega = omega;
  L.c = c;
  L.requested_turn_on_cycles = turn_on_cycles;
  const double m = std::max(0.0, std::round(turn_on_cycles - 0.25));
  const double T = L.period();
  L.t_on = (m + 0.25) * T;
  L.t_p = L.t_on + plateau_cycles * T;
  return L;
}

namespace {

double vector_potential(const LaserPulse& L, double tau) {
  const double w = L.omega;
  if (tau <= L.t_on)
    return -L.c * L.E0 / (w * L.t_on) * (tau * std::sin(w * tau) + std::cos(w * tau) / w);
  return -L.c * L.E0 / w * std::sin(w * tau);
}

}  // namespace

PulseFields pulse_fields(const LaserPulse& L, double z, double t, bool dipole_approximation) {
  const double tau = dipole_approximation ? t : t - z / L.c;
  PulseFields f;
  if (tau <= 0.0) return f;
  if (tau >= L.t_p) {
    f.A = vector_potential(L, L.t_p);
    return f;
  }
  const double envelope = tau <= L.t_on ? tau / L.t_on : 1.0;
  f.E = L.E0 * envelope * std::cos(L.omega * tau);
  f.B = f.E;
  f.A = vector_potential(L, tau);
  return f;
}

StepAverage step_average(const LaserPulse& L, double z, double t0, double t1, bool dipole_approximation) {
  const double shift = dipole_approximation ? 0.0 : z / L.c;
  const double a = std::min(t0, t1) - shift, b = std::max(t0, t1) - shift;
  StepAverage s;
  if (!(b > a)) {
    const auto f = pulse_fields(L, z, t0, dipole_approximation);
    s.A = f.A;
    s.A2 = f.A * f.A;
    return s;
  }
  static constexpr std::array<double, 5> node{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                              0.9061798459386640};
  static constexpr std::array<double, 5> weight{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                0.4786286704993665, 0.2369268850561891};
  std::array<double, 5> cuts{a, std::clamp(0.0, a, b), std::clamp(L.t_on, a, b), std::clamp(L.t_p, a, b), b};
  std::sort(cuts.begin(), cuts.end());
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double lo = cuts[p], hi = cuts[p + 1];
    if (!(hi > lo)) continue;
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    for (std::size_t q = 0; q < node.size(); ++q) {
      const double tau = mid + half * node[q];
      const double A = tau <= 0.0 ? 0.0 : vector_potential(L, std::min(tau, L.t_p));
      s.A += weight[q] * half * A;
      s.A2 += weight[q] * half * A * A;
    }
  }
  s.A /= b - a;
  s.A2 /= b - a;
  return s;
}

}  // namespace fwion
