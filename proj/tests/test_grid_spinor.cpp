#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fwion/fourier.hpp"
#include "fwion/grid.hpp"
#include "fwion/spinor.hpp"
#include "helpers.hpp"

using namespace fwion;

TEST_CASE("grid contains the origin and has the FFT momentum lattice") {
  const auto g = make_grid(256, 256, 0.2, 0.2);
  CHECK(g.x(g.origin_i()) == 0.0);
  CHECK(g.z(g.origin_j()) == 0.0);
  CHECK(g.x_max() - g.x_min() == doctest::Approx(255 * 0.2).epsilon(1e-14));
  CHECK(g.x_min() == doctest::Approx(-25.6));
  CHECK(g.x_max() == doctest::Approx(25.4));
  CHECK(g.dkx() == doctest::Approx(2 * std::numbers::pi / (256 * 0.2)));
}

TEST_CASE("small grid momentum spacing and span") {
  const auto g = make_grid(8, 8, 1.0, 1.0);
  CHECK(g.dkx() == doctest::Approx(2 * std::numbers::pi / 8));
  double lo = 1e9, hi = -1e9;
  for (double k : g.kxs()) {
    lo = std::min(lo, k);
    hi = std::max(hi, k);
  }
  CHECK(lo == doctest::Approx(-std::numbers::pi));
  CHECK(hi < std::numbers::pi);
}

TEST_CASE("invalid grids are rejected") {
  CHECK_THROWS_AS(make_grid(0, 8, 1, 1), ConfigError);
  CHECK_THROWS_AS(make_grid(8, 4, 1, 1), ConfigError);
  CHECK_THROWS_AS(make_grid(8, 8, 0, 1), ConfigError);
  CHECK_THROWS_AS(make_grid(8, 8, 1, -1), ConfigError);
}

TEST_CASE("norms") {
  const auto g = make_grid(64, 64, 0.25, 0.25);
  SpinorWavefunction psi = spin_up(g, gaussian_field(g, 0.3, -0.2, 1.0, 1.3));
  CHECK(norm(psi) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(norm(SpinorWavefunction(g)) == 0.0);
  const double r = 1.0 / std::sqrt(2.0);
  SpinorWavefunction half(g);
  for (std::size_t n = 0; n < g.size(); ++n) {
    half.up[n] = r * psi.up[n];
    half.down[n] = r * psi.up[n];
  }
  CHECK(norm(half) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("expectation values") {
  const auto g = make_grid(64, 64, 0.25, 0.25);
  const double sigma = 1.0 / std::sqrt(2.0);
  auto psi = spin_up(g, gaussian_field(g, 0, 0, sigma, sigma));

  SUBCASE("position average of a symmetric state vanishes") {
    CHECK(std::abs(expectation(psi, DiagonalOperator::position([](double x, double) { return x; }))) < 1e-14);
  }
  SUBCASE("spin-down population of a spin-up state") {
    CHECK(expectation(psi, DiagonalOperator::position([](double, double) { return 1.0; },
                                                      SpinMatrix::down_projector())) == 0.0);
  }
  SUBCASE("kinetic energy of exp(-x^2/2) per axis") {
    const double t = expectation(psi, DiagonalOperator::momentum([](double kx, double) { return 0.5 * kx * kx; }));
    CHECK(t == doctest::Approx(0.25).epsilon(1e-10));
    // Independent quadrature of |d psi/dx|^2 / 2 with the analytic derivative.
    double q = 0.0, n = 0.0;
    for (std::size_t j = 0; j < g.nz(); ++j)
      for (std::size_t i = 0; i < g.nx(); ++i) {
        const double x = g.x(i), z = g.z(j);
        const double f = std::exp(-(x * x + z * z) / 2);
        q += 0.5 * x * x * f * f;
        n += f * f;
      }
    CHECK(q / n == doctest::Approx(0.25).epsilon(1e-10));
  }
  SUBCASE("non-Hermitian operators are reported") {
    const auto moving = spin_up(g, gaussian_field(g, 0, 0, sigma, sigma, 1.0));
    CHECK_THROWS_AS(expectation(moving, DiagonalOperator::momentum([](double kx, double) { return Complex(0, kx); })),
                    std::domain_error);
  }
}

TEST_CASE("plane wave transforms to a single momentum point") {
  const auto g = make_grid(32, 16, 0.5, 0.5);
  const std::size_t m = 5;
  const double k0 = g.kx(m);
  Field f(g.size());
  for (std::size_t j = 0; j < g.nz(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) f[g.index(i, j)] = std::polar(1.0, k0 * g.x(i));
  Fourier::for_grid(g)->forward_2d(f);
  double peak = 0.0, rest = 0.0;
  for (std::size_t n = 0; n < f.size(); ++n) {
    if (n == g.index(m, 0)) peak = std::abs(f[n]);
    else rest = std::max(rest, std::abs(f[n]));
  }
  CHECK(peak > 1.0);
  CHECK(rest < 1e-12 * peak);
}

TEST_CASE("property: Fourier round trips and Parseval on random fields") {
  for (std::uint64_t seed = 1; seed <= 12; ++seed) {
    const std::size_t nx = 8u << (seed % 4), nz = 8u << ((seed / 4) % 3);
    const auto g = make_grid(nx, nz, 0.1 * static_cast<double>(seed), 0.3);
    const auto fft = Fourier::for_grid(g);
    const Field orig = testing::random_field(g, seed);
    const double n0 = field_norm(orig, g);
    const double scale_ref = testing::max_abs(orig);

    Field f = orig;
    fft->forward_x(f);
    CHECK(field_norm(f, g) == doctest::Approx(n0).epsilon(1e-12));
    fft->backward_x(f);
    CHECK(testing::max_abs_diff(f, orig) < 1e-12 * scale_ref);

    f = orig;
    fft->forward_z(f);
    CHECK(field_norm(f, g) == doctest::Approx(n0).epsilon(1e-12));
    fft->backward_z(f);
    CHECK(testing::max_abs_diff(f, orig) < 1e-12 * scale_ref);

    f = orig;
    fft->forward_2d(f);
    CHECK(field_norm(f, g) == doctest::Approx(n0).epsilon(1e-12));
    fft->backward_2d(f);
    CHECK(testing::max_abs_diff(f, orig) < 1e-12 * scale_ref);
  }
}

TEST_CASE("property: pairwise sums are reproducible and accurate") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> v(1 + rng() % 5000);
    for (auto& e : v) e = d(rng);
    const double a = pairwise_sum(std::span<const double>(v));
    const double b = pairwise_sum(std::span<const double>(v));
    CHECK(a == b);
    long double ref = 0;
    for (double e : v) ref += e;
    CHECK(a == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
  }
}

TEST_CASE("inner products") {
  const auto g = make_grid(64, 64, 0.3, 0.3);
  const auto a = gaussian_field(g, 0, 0, 1, 1);
  const auto b = gaussian_field(g, 0.5, 0, 1, 1);
  const Complex ab = inner(a, b, g), ba = inner(b, a, g);
  CHECK(ab.real() == doctest::Approx(ba.real()));
  CHECK(ab.imag() == doctest::Approx(-ba.imag()));
  CHECK(inner(a, a, g).real() == doctest::Approx(1.0));
  // Overlap of two unit Gaussians offset by d: exp(-d^2 / (8 s^2)).
  CHECK(std::abs(ab) == doctest::Approx(std::exp(-0.25 / 8)).epsilon(1e-10));
  CHECK(is_zero(Field(g.size())));
  CHECK_FALSE(is_zero(a));
}
