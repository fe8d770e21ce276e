#include "fwion/classical.hpp"

#include <algorithm>
#include <cmath>

#include "fwion/types.hpp"

namespace fwion {

namespace {

struct Derivative {
  double x, z, px, pz;
};

Derivative rhs(const LaserPulse& L, const TermToggles& tg, double t, const PhaseSpacePoint& s) {
  const double c = L.c;
  const auto f = pulse_fields(L, s.z, t, tg.dipole_approximation);
  const double a2 = tg.printed_a2 ? 1.0 : 0.5;
  const double p2 = s.px * s.px + s.pz * s.pz;
  const double rel = tg.mass_shift ? p2 / (2.0 * c * c) : 0.0;
  Derivative d;
  d.x = s.px * (1.0 - rel) + f.A / c;
  d.z = s.pz * (1.0 - rel);
  d.px = 0.0;
  // dA/dz = E for a wave travelling along +z.
  const double dAdz = tg.dipole_approximation ? 0.0 : f.E;
  d.pz = -(s.px / c + 2.0 * a2 * f.A / (c * c)) * dAdz;
  return d;
}

PhaseSpacePoint advance(const PhaseSpacePoint& s, const Derivative& d, double h) {
  return {s.t + h, s.x + h * d.x, s.z + h * d.z, s.px + h * d.px, s.pz + h * d.pz};
}


PhaseSpacePoint rk4(const LaserPulse& L, const TermToggles& tg, PhaseSpacePoint s, double h) {
  const double t = s.t;
  const auto k1 = rhs(L, tg, t, s);
  const auto k2 = rhs(L, tg, t + h / 2, advance(s, k1, h / 2));
  const auto k3 = rhs(L, tg, t + h / 2, advance(s, k2, h / 2));
  const auto k4 = rhs(L, tg, t + h, advance(s, k3, h));
  s.x += h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x);
  s.z += h / 6 * (k1.z + 2 * k2.z + 2 * k3.z + k4.z);
  s.px += h / 6 * (k1.px + 2 * k2.px + 2 * k3.px + k4.px);
  s.pz += h / 6 * (k1.pz + 2 * k2.pz + 2 * k3.pz + k4.pz);
  s.t = t + h;
  return s;
}

double retarded(const LaserPulse& L, const TermToggles& tg, const PhaseSpacePoint& s) {
  return tg.dipole_approximation ? s.t : s.t - s.z / L.c;
}

// A_x switches on discontinuously at the pulse front, so dA/dz carries a delta
// function there. Crossing it changes p_z by (p_x A0/c + a2 A0^2/c^2) / (c - v_z).
void cross_front(const LaserPulse& L, const TermToggles& tg, PhaseSpacePoint& s) {
  if (tg.dipole_approximation) return;
  const double c = L.c;
  const double a0 = pulse_fields(L, 0.0, 1e-12 * L.period(), true).A;
  const double a2 = tg.printed_a2 ? 1.0 : 0.5;
  const double p2 = s.px * s.px + s.pz * s.pz;
  const double vz = s.pz * (1.0 - (tg.mass_shift ? p2 / (2.0 * c * c) : 0.0));
  s.pz += (s.px * a0 / c + a2 * a0 * a0 / (c * c)) / (c - vz);
}

}  // namespace

std::vector<PhaseSpacePoint> classical_trajectory(const LaserPulse& laser, const TermToggles& toggles,
                                                  PhaseSpacePoint start, double t_end, double dt) {
  if (!(dt > 0.0)) throw ConfigError("classical step must be positive");
  const long n = static_cast<long>(std::ceil((t_end - start.t) / dt - 1e-9));
  std::vector<PhaseSpacePoint> out;
  out.reserve(static_cast<std::size_t>(std::max(0L, n)) + 1);
  out.push_back(start);
  PhaseSpacePoint s = start;
  bool crossed = retarded(laser, toggles, s) > 0.0;
  for (long i = 0; i < n; ++i) {
    const double t1 = start.t + static_cast<double>(i + 1) * dt;
    if (!crossed && retarded(laser, toggles, rk4(laser, toggles, s, t1 - s.t)) > 0.0) {
      // Step exactly onto the front (bisection on the retarded time), kick,
      // then finish the step just behind it.
      double lo = 0.0, hi = t1 - s.t;
      for (int it = 0; it < 60; ++it) {
        const double mid = 0.5 * (lo + hi);
        (retarded(laser, toggles, rk4(laser, toggles, s, mid)) > 0.0 ? hi : lo) = mid;
      }
      s = rk4(laser, toggles, s, lo);
      cross_front(laser, toggles, s);
      s.t = s.t + (hi - lo);
      crossed = true;
    }
    s = rk4(laser, toggles, s, t1 - s.t);
    s.t = t1;
    out.push_back(s);
  }
  return out;
}

Excursion classical_excursion(const LaserPulse& laser, const TermToggles& toggles, double t_end) {
  const double dt = laser.period() / 200.0;
  Excursion e;
  for (const auto& p : classical_trajectory(laser, toggles, {}, t_end, dt)) {
    e.x = std::max(e.x, std::abs(p.x));
    e.z = std::max(e.z, std::abs(p.z));
  }
  return e;
}

Excursion classical_quiver(const LaserPulse& laser, const TermToggles& toggles) {
  constexpr std::size_t per_period = 200;
  const auto tr = classical_trajectory(laser, toggles, {}, laser.t_p, laser.period() / per_period);
  Excursion e;
  if (tr.size() <= per_period) return classical_excursion(laser, toggles, laser.t_p);
  std::vector<double> sx(tr.size() + 1, 0.0), sz(tr.size() + 1, 0.0);
  for (std::size_t k = 0; k < tr.size(); ++k) {
    sx[k + 1] = sx[k] + tr[k].x;
    sz[k + 1] = sz[k] + tr[k].z;
  }
  const std::size_t h = per_period / 2;
  for (std::size_t k = h; k + h < tr.size(); ++k) {
    const double mx = (sx[k + h + 1] - sx[k - h]) / static_cast<double>(2 * h + 1);
    const double mz = (sz[k + h + 1] - sz[k - h]) / static_cast<double>(2 * h + 1);
    e.x = std::max(e.x, std::abs(tr[k].x - mx));
    e.z = std::max(e.z, std::abs(tr[k].z - mz));
  }
  return e;
}

}  // namespace fwion
