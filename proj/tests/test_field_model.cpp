#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fwion/laser.hpp"
#include "fwion/potential.hpp"
#include "fwion/toggles.hpp"
#include "fwion/units.hpp"

using namespace fwion;

namespace {

const SoftCorePotential z12 = make_soft_core(80.32, 1.0, 12);

}  // namespace

TEST_CASE("soft-core value and gradient") {
  CHECK(z12.value(0, 0) == doctest::Approx(-80.32));
  const auto g0 = z12.gradient(0, 0);
  CHECK(g0.x == 0.0);
  CHECK(g0.z == 0.0);
  const double x = 1.3, z = -2.7, h = 1e-5;
  const auto g = z12.gradient(x, z);
  const double fx = (z12.value(x + h, z) - z12.value(x - h, z)) / (2 * h);
  const double fz = (z12.value(x, z + h) - z12.value(x, z - h)) / (2 * h);
  CHECK(std::abs(g.x - fx) < 1e-8);
  CHECK(std::abs(g.z - fz) < 1e-8);
}

TEST_CASE("soft-core Laplacian and Laplacian of the gradient match finite differences") {
  const double x = 0.7, z = -0.4, h = 1e-3;
  const auto V = [](double a, double b) { return z12.value(a, b); };
  const double lap =
      (V(x + h, z) + V(x - h, z) + V(x, z + h) + V(x, z - h) - 4 * V(x, z)) / (h * h);
  CHECK(z12.laplacian(x, z) == doctest::Approx(lap).epsilon(1e-5));
  const auto gx = [](double a, double b) { return z12.gradient(a, b).x; };
  const double lapgx = (gx(x + h, z) + gx(x - h, z) + gx(x, z + h) + gx(x, z - h) - 4 * gx(x, z)) / (h * h);
  CHECK(z12.laplacian_gradient(x, z).x == doctest::Approx(lapgx).epsilon(1e-5));
}

TEST_CASE("invalid soft-core parameters") {
  CHECK_THROWS_AS(make_soft_core(0.0, 1.0, 1), ConfigError);
  CHECK_THROWS_AS(make_soft_core(1.0, 0.0, 1), ConfigError);
}

TEST_CASE("spin-orbit prefactor") {
  const Potential p = z12;
  const double c = constants::c;
  CHECK(so_prefactor(p, 0, 0, c) == doctest::Approx(-80.32 / (4 * c * c)));
  CHECK(so_prefactor(p, 0, 0, c) == doctest::Approx(-1.0695e-3).epsilon(1e-4));
  double prev = so_prefactor(p, 0, 0, c);
  for (double r = 0.5; r < 50; r += 0.5) {
    const double f = so_prefactor(p, r * 0.6, r * 0.8, c);
    CHECK(f < 0.0);
    CHECK(f > prev);
    prev = f;
  }
  // Far tail follows the bare Coulomb force k / r^3.
  CHECK(so_prefactor(p, 1e4, 0, c) == doctest::Approx(-80.32 / (4 * c * c * 1e12)).epsilon(1e-6));
  CHECK(so_prefactor(p, 0.3, 0.2, 2 * c) == doctest::Approx(so_prefactor(p, 0.3, 0.2, c) / 4));
  // -(1/4c^2) (1/r) dV/dr through the gradient.
  const double x = 1.1, z = 0.4, r = std::hypot(x, z);
  const auto g = z12.gradient(x, z);
  const double dvdr = (g.x * x + g.z * z) / r;
  CHECK(so_prefactor(p, x, z, c) == doctest::Approx(-dvdr / r / (4 * c * c)));
}

TEST_CASE("unit conversions") {
  CHECK(wavelength_to_omega(248) == doctest::Approx(0.1838).epsilon(5e-4));
  CHECK(wavelength_to_omega(527) == doctest::Approx(0.0866).epsilon(2e-3));
  CHECK(intensity_to_field(3.50945e16) == doctest::Approx(1.0).epsilon(1e-12));
  // I = (1/2) eps0 c E^2 with the atomic unit of field in SI.
  const double eps0 = 8.8541878128e-12, c_si = 299792458.0, e_au = 5.14220674763e11;
  const double i_au = 0.5 * eps0 * c_si * e_au * e_au / 1e4;
  CHECK(i_au == doctest::Approx(constants::intensity_au_Wcm2).epsilon(1e-4));
  CHECK(intensity_to_field(2.5e16) == doctest::Approx(0.844).epsilon(1e-3));
  CHECK_THROWS_AS(intensity_to_field(0.0), ConfigError);
  CHECK_THROWS_AS(wavelength_to_omega(-1.0), ConfigError);
}

TEST_CASE("ponderomotive energy, Keldysh parameter and cutoff") {
  const auto s = ponderomotive_and_keldysh(0.844, 0.1838, 4.5);
  CHECK(s.Up == doctest::Approx(5.27).epsilon(2e-3));
  CHECK(s.cutoff_order == 115);
  CHECK(s.keldysh == doctest::Approx(std::sqrt(4.5 / (2 * s.Up))));
  CHECK(ponderomotive_and_keldysh(1e-6, 0.1838, 4.5).keldysh > 1e4);
  CHECK(ponderomotive_and_keldysh(0.844, 2 * 0.1838, 4.5).Up == doctest::Approx(s.Up / 4));
}

TEST_CASE("turn-on is snapped to (m + 1/4) cycles") {
  const auto a = make_laser_pulse(1.0, 0.1, 5.25, 10, constants::c);
  CHECK(a.turn_on_cycles() == doctest::Approx(5.25));
  const auto b = make_laser_pulse(1.0, 0.1, 3.0, 10, constants::c);
  CHECK(b.turn_on_cycles() == doctest::Approx(3.25));
  CHECK(b.requested_turn_on_cycles == 3.0);
  CHECK(b.plateau_cycles() == doctest::Approx(10.0));
  CHECK(make_laser_pulse(1.0, 0.1, 0.0, 1, constants::c).turn_on_cycles() == doctest::Approx(0.25));
  CHECK_THROWS_AS(make_laser_pulse(1.0, 0.0, 3, 10, constants::c), ConfigError);
  CHECK_THROWS_AS(make_laser_pulse(1.0, 0.1, -1, 10, constants::c), ConfigError);
}

TEST_CASE("pulse fields") {
  const double omega = wavelength_to_omega(527);
  const auto L = make_laser_pulse(1.41, omega, 5.25, 3, constants::c);

  SUBCASE("fields vanish at the front") {
    CHECK(pulse_fields(L, 0, 0).E == 0.0);
    for (double z : {-3.0, 0.0, 4.0}) {
      const auto f = pulse_fields(L, z, z / L.c - 1e-9);
      CHECK(f.A == 0.0);
      CHECK(f.E == 0.0);
      CHECK(f.B == 0.0);
    }
  }
  SUBCASE("A is continuous at the end of the turn-on") {
    const double e = 1e-9;
    const auto lo = pulse_fields(L, 0, L.t_on - e), hi = pulse_fields(L, 0, L.t_on + e);
    CHECK(std::abs(lo.A - hi.A) < 1e-12 * L.c * L.E0 / omega + 1e-9 * L.c * L.E0);
    CHECK(std::abs(pulse_fields(L, 0, L.t_on).E) == doctest::Approx(L.E0 * std::abs(std::cos(omega * L.t_on))));
  }
  SUBCASE("E equals B everywhere") {
    for (double t = 0; t < L.t_p + 50; t += 7.3)
      for (double z : {-5.0, 0.0, 2.5}) {
        const auto f = pulse_fields(L, z, t);
        CHECK(f.E == f.B);
      }
  }
  SUBCASE("dipole approximation removes the z dependence") {
    for (double t = 1; t < L.t_p; t += 13.1) {
      const auto a = pulse_fields(L, 0, t, true), b = pulse_fields(L, 7.5, t, true);
      CHECK(a.A == b.A);
      CHECK(a.E == b.E);
    }
  }
  SUBCASE("E = -(1/c) dA/dt on the ramp and the plateau") {
    const double h = 1e-4;
    for (double t : {3.0, 0.5 * L.t_on, L.t_on + 10.0, 0.5 * (L.t_on + L.t_p)}) {
      const double dA = (pulse_fields(L, 0.3, t + h).A - pulse_fields(L, 0.3, t - h).A) / (2 * h);
      CHECK(-dA / L.c == doctest::Approx(pulse_fields(L, 0.3, t).E).epsilon(1e-7));
    }
  }
  SUBCASE("after the pulse E and B vanish and A stays frozen") {
    const auto a = pulse_fields(L, 0, L.t_p + 1), b = pulse_fields(L, 0, L.t_p + 100);
    CHECK(a.E == 0.0);
    CHECK(a.B == 0.0);
    CHECK(a.A == b.A);
    CHECK(a.A == doctest::Approx(pulse_fields(L, 0, L.t_p - 1e-9).A).epsilon(1e-6));
  }
}

TEST_CASE("term toggles") {
  TermToggles t;
  CHECK_FALSE(t.spin_coupled());
  CHECK(t.c() == constants::c);
  t.c_override = 10 * constants::c;
  CHECK(t.c() == 10 * constants::c);
  CHECK(t.hash() != TermToggles{}.hash());
  t.c_override = -1.0;
  CHECK_THROWS_AS(t.validate(), ConfigError);
  CHECK(TermToggles::all_on().spin_coupled());
  CHECK(TermToggles::all_on().hash() == TermToggles::all_on().hash());
}

TEST_CASE("step averages of A") {
  const double omega = wavelength_to_omega(248);
  const auto L = make_laser_pulse(0.84, omega, 3.25, 2, constants::c);
  const double k = L.c * L.E0 / omega;
  const auto ramp = [&](double tau) {
    return -k / L.t_on * (-tau * std::cos(omega * tau) / omega + 2.0 * std::sin(omega * tau) / (omega * omega));
  };
  const auto brute = [&](double z, double t0, double t1) {
    const int n = 2000000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = pulse_fields(L, z, t0 + (i + 0.5) * (t1 - t0) / n).A;
      s += a;
      s2 += a * a;
    }
    return std::pair{s / n, s2 / n};
  };
  const double h = 0.05;

  SUBCASE("across the front") {
    const auto m = step_average(L, 0, -h, h, true);
    CHECK(m.A == doctest::Approx((ramp(h) - ramp(0.0)) / (2 * h)).epsilon(1e-12));
    CHECK(m.A2 == doctest::Approx(brute(0, -h, h).second).epsilon(1e-6));
  }
  SUBCASE("on the plateau") {
    const double a = L.t_on + 3.1, b = a + h;
    const auto m = step_average(L, 0, a, b, true);
    CHECK(m.A == doctest::Approx(k / omega * (std::cos(omega * b) - std::cos(omega * a)) / h).epsilon(1e-12));
    CHECK(m.A2 == doctest::Approx(brute(0, a, b).second).epsilon(1e-6));
  }
  SUBCASE("across the end of the pulse") {
    const double a = L.t_p - 0.02, b = a + h;
    const double exact = k / omega * (std::cos(omega * L.t_p) - std::cos(omega * a)) +
                         pulse_fields(L, 0, L.t_p + 1).A * (b - L.t_p);
    CHECK(step_average(L, 0, a, b, true).A == doctest::Approx(exact / h).epsilon(1e-12));
  }
  SUBCASE("retardation shifts the window") {
    const double z = 6.0, t = 0.01;
    const auto m = step_average(L, z, t, t + h), r = step_average(L, 0, t - z / L.c, t - z / L.c + h);
    CHECK(m.A == doctest::Approx(r.A).epsilon(1e-12));
    CHECK(m.A2 == doctest::Approx(r.A2).epsilon(1e-12));
    const auto [bA, bA2] = brute(z, t, t + h);
    CHECK(m.A == doctest::Approx(bA).epsilon(1e-6));
    CHECK(m.A2 == doctest::Approx(bA2).epsilon(1e-6));
  }
}
