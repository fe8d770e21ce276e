#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "fwion/fourier.hpp"
#include "fwion/photoelectron.hpp"
#include "fwion/propagator.hpp"
#include "helpers.hpp"

using namespace fwion;

namespace {

const Grid2D& grid() {
  static const Grid2D g = make_grid(128, 32, 0.25, 0.5);
  return g;
}

SpinorWavefunction packet(double x0, double k0, double time = 0.0) {
  auto psi = spin_up(grid(), gaussian_field(grid(), x0, 0, 1.5, 1.5, k0, 0));
  psi.time = time;
  return psi;
}

}  // namespace

TEST_CASE("zero flux leaves the ledger unchanged") {
  FluxLedger l(grid());
  l.accumulate(SpinorWavefunction(grid()), 0.0);
  CHECK(testing::max_abs(l.up()) == 0.0);
  CHECK(testing::max_abs(l.down()) == 0.0);
  CHECK(l.absorbed_probability() == 0.0);
}

TEST_CASE("identical flux at two times differs by the free phase") {
  const double t1 = 3.0, t2 = 7.5;
  FluxLedger a(grid()), b(grid());
  a.accumulate(packet(0, 1.0, t1), 0.0);
  b.accumulate(packet(0, 1.0, t2), 0.0);
  const auto& g = grid();
  double worst = 0.0;
  for (std::size_t j = 0; j < g.nz(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      if (std::abs(b.up()[k]) < 1e-6) continue;
      const Complex expect = std::polar(1.0, 0.5 * g.kx(i) * g.kx(i) * (t1 - t2));
      worst = std::max(worst, std::abs(a.up()[k] / b.up()[k] - expect));
    }
  CHECK(worst < 1e-10);
}

TEST_CASE("ionization window") {
  const IonizationWindow w{5.0, 4.0};
  CHECK(w.factor(0.0) == 0.0);
  CHECK(w.factor(4.99) == 0.0);
  CHECK(w.factor(-(5.0 + 2.0)) == doctest::Approx(0.5));
  CHECK(w.factor(9.5) == 1.0);
  SUBCASE("packet inside X_I is removed") {
    // Tail mass of the packet beyond 8 widths.
    const auto out = slice_residual(packet(0, 0), {12.0, 2.0});
    CHECK(norm(out) < std::erfc(8.0 / std::sqrt(2.0)));
  }
  SUBCASE("packet beyond the ramp is untouched") {
    const auto in = packet(-9.0, 0);
    const auto out = slice_residual(in, {0.5, 0.5});
    const auto& g = grid();
    for (std::size_t j = 0; j < g.nz(); ++j)
      for (std::size_t i = 0; i < g.nx(); ++i) {
        const std::size_t k = g.index(i, j);
        if (std::abs(g.x(i)) >= 1.0) CHECK(out.up[k] == in.up[k]);
        if (std::abs(g.x(i)) < 0.5) CHECK(out.up[k] == 0.0);
      }
  }
  SUBCASE("window must fit in the box") {
    CHECK_THROWS_AS(slice_residual(packet(0, 0), {10.0, 10.0}), ConfigError);
    CHECK_THROWS_AS(slice_residual(packet(0, 0), {-1.0, 1.0}), ConfigError);
  }
}

TEST_CASE("momentum spectrum") {
  const auto& g = grid();
  SUBCASE("an in-box packet peaks at its momentum") {
    const double k0 = g.kx(10);
    const auto m = momentum_spectrum(FluxLedger(g), packet(0, k0), 0.0);
    const auto d = m.density();
    const auto it = std::max_element(d.begin(), d.end());
    CHECK(g.kx(static_cast<std::size_t>(it - d.begin())) == doctest::Approx(k0));
    CHECK(m.total_probability() == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("a single flux entry is free-propagated to t_f") {
    FluxLedger l(g);
    const auto f = packet(0, 1.0, 2.0);
    l.accumulate(f, norm(f));
    const double tf = 5.0;
    const auto m = momentum_spectrum(l, SpinorWavefunction(g), tf);
    Field ref = f.up;
    Fourier::for_grid(g)->forward_x(ref);
    double worst = 0.0;
    for (std::size_t j = 0; j < g.nz(); ++j)
      for (std::size_t i = 0; i < g.nx(); ++i) {
        const std::size_t k = g.index(i, j);
        worst = std::max(worst, std::abs(m.up[k] - std::polar(1.0, -0.5 * g.kx(i) * g.kx(i) * (tf - 2.0)) * ref[k]));
      }
    CHECK(worst < 1e-12);
    CHECK(m.total_probability() == doctest::Approx(l.absorbed_probability()).epsilon(1e-10));
  }
  SUBCASE("spin components add at the probability level") {
    auto psi = packet(0, 0.5);
    psi.down = gaussian_field(g, 2.0, 0, 1.0, 1.0, -1.0, 0);
    const auto m = momentum_spectrum(FluxLedger(g), psi, 0.0);
    const auto d = m.density(), u = m.density_up(), dn = m.density_down();
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == u[i] + dn[i]);
  }
}

TEST_CASE("energy mapping") {
  const double c = constants::c;
  CHECK(kinetic_energy(2.0, c) == doctest::Approx(2.0 - 16.0 / (8 * c * c)));
  CHECK(energy_jacobian(2.0, 1e12) == doctest::Approx(1.0 / std::sqrt(4.0)));
  const auto& g = grid();
  SUBCASE("monochromatic momentum lands on one energy") {
    std::vector<double> d(g.nx(), 0.0);
    const std::size_t m = 12;
    d[m] = 1.0;
    const auto s = energy_spectrum(d, g, c);
    const double p0 = g.kx(m);
    std::size_t hits = 0;
    for (std::size_t k = 0; k < s.positive.energy.size(); ++k)
      if (s.positive.density[k] > 0) {
        ++hits;
        CHECK(s.positive.energy[k] == doctest::Approx(p0 * p0 / 2 - std::pow(p0, 4) / (8 * c * c)));
        CHECK(s.positive.density[k] == doctest::Approx(energy_jacobian(s.positive.energy[k], c)));
      }
    CHECK(hits == 1);
  }
  SUBCASE("nonrelativistic limit") {
    std::vector<double> d(g.nx(), 1.0);
    const auto s = energy_spectrum(d, g, 1e9);
    for (std::size_t k = 0; k < s.positive.energy.size(); ++k)
      CHECK(s.positive.density[k] == doctest::Approx(1.0 / std::sqrt(2 * s.positive.energy[k])).epsilon(1e-9));
  }
  SUBCASE("p = 0 is excluded and the lattice is split by sign") {
    std::vector<double> d(g.nx(), 1.0);
    const auto s = energy_spectrum(d, g, c);
    CHECK(s.positive.energy.size() + s.negative.energy.size() == g.nx() - 1);
    CHECK(s.positive.energy.front() > 0.0);
  }
  SUBCASE("momenta past the turning point are refused") {
    std::vector<double> d(g.nx(), 1.0);
    CHECK_THROWS_AS(energy_spectrum(d, g, 1.0), ConfigError);
  }
}

TEST_CASE("absorbed free Gaussian reproduces its momentum density") {
  // Broad in z so the x-only free phase of the ledger is accurate.
  const auto g = make_grid(256, 128, 0.25, 1.0);
  auto run = [&](int cadence) {
    PropagatorSettings s;
    s.grid = g;
    s.dt = 0.05;
    s.absorber = MaskFunction::default_for(g);
    s.absorber_cadence = cadence;
    Propagator p(s);
    auto psi = spin_up(g, gaussian_field(g, 0, 0, 2.0, 20.0, 2.5, 0));
    FluxLedger l(g);
    for (int k = 0; k < 800; ++k)
      if (auto a = p.step(psi)) l.accumulate(*a);
    return momentum_spectrum(l, psi, psi.time).density();
  };
  const auto ref = [&] {
    auto f = gaussian_field(g, 0, 0, 2.0, 20.0, 2.5, 0);
    SpinorWavefunction psi(g);
    psi.up = f;
    return momentum_spectrum(FluxLedger(g), psi, 0.0).density();
  }();
  const auto a = run(1), b = run(2);
  double worst_a = 0.0, worst_b = 0.0;
  for (std::size_t i = 0; i < ref.size(); ++i) {
    if (ref[i] * g.dkx() < 1e-4) continue;
    worst_a = std::max(worst_a, std::abs(a[i] / ref[i] - 1));
    worst_b = std::max(worst_b, std::abs(b[i] / a[i] - 1));
  }
  CHECK(worst_a < 0.01);
  CHECK(worst_b < 0.01);
}

TEST_CASE("ledger persistence") {
  const auto dir = std::filesystem::temp_directory_path() / "fwion_ledger_test";
  std::filesystem::remove_all(dir);
  FluxLedger l(grid());
  l.accumulate(packet(1.0, 0.7, 1.25), 0.123456789);
  l.save(dir / "ledger", 42);
  const auto r = FluxLedger::load(dir / "ledger");
  CHECK(r.absorbed_probability() == l.absorbed_probability());
  CHECK(r.entries() == 1);
  CHECK(testing::max_abs_diff(r.up(), l.up()) == 0.0);
  std::filesystem::remove(dir / "ledger.snap");
  CHECK_THROWS_AS(FluxLedger::load(dir / "ledger"), std::runtime_error);
  std::filesystem::remove_all(dir);
}
