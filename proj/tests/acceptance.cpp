#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fwion/classical.hpp"
#include "fwion/eigensolver.hpp"
#include "fwion/observables.hpp"
#include "fwion/photoelectron.hpp"
#include "fwion/propagator.hpp"
#include "fwion/runner.hpp"
#include "fwion/scenario.hpp"
#include "fwion/spectrum.hpp"
#include "fwion/units.hpp"

using namespace fwion;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

fs::path scratch() {
  static const fs::path p = [] {
    auto d = fs::temp_directory_path() / "fwion_acceptance";
    fs::create_directories(d);
    return d;
  }();
  return p;
}

const Potential& z12() {
  static const Potential p = make_soft_core(80.32, 1.0, 12);
  return p;
}

const Potential& z3() {
  static const Potential p = make_soft_core(6.48, 1.0, 3);
  return p;
}

const SpinorWavefunction& z12_ground() {
  static const SpinorWavefunction psi = imaginary_time_relax(z12(), make_grid(64, 64, 0.1, 0.1), 1).states.front();
  return psi;
}

// Records t, <x>, <z>, P_down every `every` steps up to n steps.
struct Trace {
  std::vector<double> t, x, z, p_down;
};

Trace evolve(Propagator& p, SpinorWavefunction& psi, long n, long every = 1) {
  Trace tr;
  for (long k = 0; k <= n; ++k) {
    if (k % every == 0 || k == n) {
      const auto c = center_of_mass(psi);
      tr.t.push_back(psi.time);
      tr.x.push_back(c.x);
      tr.z.push_back(c.z);
      tr.p_down.push_back(spin_down_population(psi));
    }
    if (k < n) p.step(psi);
  }
  return tr;
}

Outcome ground_state_energy() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = make_grid(256, 256, 0.1, 0.1);
  ScanOptions o;
  o.t_total = 20.0;
  o.e_max = -60.0;
  const auto scan = spectral_scan(z12(), g, 0.005, default_probe(z12()), o);
  const double e_scan = scan.lines.empty() ? 0.0 : scan.lines.front().energy;
  const double e_it = imaginary_time_relax(z12(), g, 1).levels.front().energy;
  const double secs = seconds_since(t0);
  const bool ok = std::abs(e_scan / -72.0 - 1) < 0.01 && std::abs(e_it / -72.0 - 1) < 0.01 && secs < 600;
  return {ok, fmt("256x256 grid: spectral %.4f, imaginary time %.4f hartree, %.0f s", e_scan, e_it, secs)};
}

Outcome unitarity() {
  PropagatorSettings s;
  s.grid = make_grid(64, 64, 0.1, 0.1);
  s.potential = z12();
  s.toggles = TermToggles::all_on();
  s.dt = 0.02;
  s.laser = make_laser_pulse(intensity_to_field(7e16), wavelength_to_omega(527), 5.25, 10, constants::c);
  Propagator p(s);
  auto psi = z12_ground();
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    p.step(psi);
    worst = std::max(worst, std::abs(norm(psi) - 1.0));
  }
  return {worst < 1e-6, fmt("max |norm - 1| over 1000 all-terms steps: %.2e", worst)};
}

Outcome dispersion() {
  const auto g = make_grid(32, 32, 0.4, 0.4);
  double worst = 0.0, k4_on = 0.0;
  for (int ms = 0; ms < 2; ++ms)
    for (std::size_t mx : {1u, 3u, 7u})
      for (std::size_t mz : {0u, 2u, 5u}) {
        PropagatorSettings s;
        s.grid = g;
        s.toggles.mass_shift = ms == 1;
        s.dt = 0.05;
        Propagator p(s);
        SpinorWavefunction psi(g);
        const double kx = g.kx(mx), kz = g.kz(mz), k2 = kx * kx + kz * kz;
        for (std::size_t j = 0; j < g.nz(); ++j)
          for (std::size_t i = 0; i < g.nx(); ++i) psi.up[g.index(i, j)] = std::polar(1.0, kx * g.x(i) + kz * g.z(j));
        const auto psi0 = psi;
        p.step(psi);
        const double phase = -std::arg(inner(psi0, psi));
        const double expect = (0.5 * k2 - (ms ? k2 * k2 / (8 * constants::c * constants::c) : 0.0)) * s.dt;
        worst = std::max(worst, std::abs(phase - expect));
        if (ms) k4_on = std::max(k4_on, k2 * k2 / (8 * constants::c * constants::c) * s.dt);
      }
  return {worst < 1e-8 && k4_on > 1e-8,
          fmt("max phase error per step %.2e rad (k^4 term up to %.2e rad)", worst, k4_on)};
}

Outcome classical_drift() {
  const double E0 = intensity_to_field(1e16), w = wavelength_to_omega(248);
  PropagatorSettings s;
  s.grid = make_grid(512, 256, 0.5, 0.5);
  s.toggles.mass_shift = true;
  s.dt = 0.05;
  s.laser = make_laser_pulse(E0, w, 1.25, 2, constants::c);
  Propagator p(s);
  auto psi = spin_up(s.grid, gaussian_field(s.grid, 0, 0, 5.0, 5.0));
  const long n = std::lround(s.laser->t_p / s.dt);
  const auto q = evolve(p, psi, n);
  const auto cl = classical_trajectory(*s.laser, s.toggles, {}, s.laser->t_p, s.dt);
  double dx = 0, dz = 0, mx = 0, mz = 0;
  const std::size_t m = std::min(q.t.size(), cl.size());
  for (std::size_t k = 0; k < m; ++k) {
    dx = std::max(dx, std::abs(q.x[k] - cl[k].x));
    dz = std::max(dz, std::abs(q.z[k] - cl[k].z));
    mx = std::max(mx, std::abs(cl[k].x));
    mz = std::max(mz, std::abs(cl[k].z));
  }
  return {dx < 0.05 * mx && dz < 0.05 * mz,
          fmt("max deviation x %.2e of %.2f bohr, z %.2e of %.3e bohr over %.2f cycles", dx, mx, dz, mz,
              s.laser->t_p / s.laser->period())};
}

Outcome dipole_parity() {
  PropagatorSettings s;
  s.grid = make_grid(256, 64, 0.25, 0.25);
  s.potential = z3();
  s.toggles = TermToggles::all_on();
  s.toggles.dipole_approximation = true;
  s.dt = 0.05;
  s.laser = make_laser_pulse(intensity_to_field(2.5e16), wavelength_to_omega(248), 1.25, 3, constants::c);
  s.absorber = MaskFunction::default_for(s.grid);
  Propagator p(s);
  auto psi = imaginary_time_relax(z3(), s.grid, 1).states.front();
  const auto tr = evolve(p, psi, std::lround(s.laser->t_p / s.dt));
  double worst = 0.0, xmax = 0.0;
  for (std::size_t k = 0; k < tr.t.size(); ++k) {
    worst = std::max(worst, std::abs(tr.z[k]));
    xmax = std::max(xmax, std::abs(tr.x[k]));
  }
  return {worst < 1e-6, fmt("max |<z>| %.2e bohr while max |<x>| %.2f bohr", worst, xmax)};
}

// <x(T)> of the Z=3 ground state after a short dipole pulse.
double kin_x_final(bool mass_shift, double c) {
  PropagatorSettings s;
  s.grid = make_grid(128, 128, 0.2, 0.2);
  s.potential = z3();
  s.toggles.dipole_approximation = true;
  s.toggles.mass_shift = mass_shift;
  s.toggles.c_override = c;
  s.dt = 0.05;
  s.laser = make_laser_pulse(intensity_to_field(1e15), wavelength_to_omega(248), 1.25, 2, c);
  s.absorber = MaskFunction::default_for(s.grid);
  Propagator p(s);
  static const auto ground = imaginary_time_relax(z3(), s.grid, 1).states.front();
  auto psi = ground;
  const long n = std::lround(s.laser->t_p / s.dt);
  for (long k = 0; k < n; ++k) p.step(psi);
  return center_of_mass(psi).x;
}

// Spin-orbit splitting of the first excited Z=12 doublet from the field-free
// spin precession of one of its members: P_down(T) = sin^2(Delta T / 2).
double so_splitting_from_precession(double c) {
  const auto g = make_grid(64, 64, 0.1, 0.1);
  static const auto levels = imaginary_time_relax(z12(), g, 3);
  PropagatorSettings s;
  s.grid = g;
  s.potential = z12();
  s.toggles.spin_orbit = true;
  s.toggles.c_override = c;
  s.dt = 0.01;
  Propagator p(s);
  auto psi = levels.states.at(1);
  const double T = 200.0;
  const long n = std::lround(T / s.dt);
  for (long k = 0; k < n; ++k) p.step(psi);
  return 2.0 * std::asin(std::sqrt(spin_down_population(psi))) / T;
}

double pauli_mean_pdown(double c, TermToggles t) {
  PropagatorSettings s;
  s.grid = make_grid(64, 64, 0.1, 0.1);
  s.potential = z12();
  t.c_override = c;
  s.toggles = t;
  s.dt = 0.02;
  s.laser = make_laser_pulse(intensity_to_field(7e16), wavelength_to_omega(527), 5.25, 10, c);
  Propagator p(s);
  auto psi = z12_ground();
  const auto tr = evolve(p, psi, std::lround(s.laser->t_p / s.dt), 5);
  double sum = 0;
  int cnt = 0;
  for (std::size_t k = 0; k < tr.t.size(); ++k)
    if (tr.t[k] >= s.laser->t_on) {
      sum += tr.p_down[k];
      ++cnt;
    }
  return sum / cnt;
}

Outcome c_scaling() {
  const double c = constants::c;
  const double dk1 = kin_x_final(true, c) - kin_x_final(false, c);
  const double dk10 = kin_x_final(true, 10 * c) - kin_x_final(false, 10 * c);
  const double r1 = dk1 / dk10;
  const double so1 = so_splitting_from_precession(c), so10 = so_splitting_from_precession(10 * c);
  const double r2 = so1 / so10;
  TermToggles pauli;
  pauli.pauli = true;
  const double r3 = pauli_mean_pdown(c, pauli) / pauli_mean_pdown(10 * c, pauli);
  auto near100 = [](double r) { return std::abs(r / 100.0 - 1.0) <= 0.2; };
  return {near100(r1) && near100(r2) && near100(r3),
          fmt("ratios c/10c: mass-shift change of <x(T)> %.1f (%.2e bohr), spin-orbit splitting %.1f "
              "(%.3e hartree), Pauli spin-down population %.1f",
              r1, dk1, r2, so1, r3)};
}

Outcome spin_oscillation() {
  const double w = wavelength_to_omega(527);
  double mean[2] = {0, 0}, peak = 0.0;
  for (int so = 0; so < 2; ++so) {
    TermToggles t = TermToggles::all_on();
    t.spin_orbit = so == 1;
    PropagatorSettings s;
    s.grid = make_grid(64, 64, 0.1, 0.1);
    s.potential = z12();
    s.toggles = t;
    s.dt = 0.02;
    s.laser = make_laser_pulse(intensity_to_field(7e16), w, 5.25, 10, constants::c);
    Propagator p(s);
    auto psi = z12_ground();
    const auto tr = evolve(p, psi, std::lround(s.laser->t_p / s.dt), 5);
    int cnt = 0;
    for (std::size_t k = 0; k < tr.t.size(); ++k)
      if (tr.t[k] >= s.laser->t_on) {
        mean[so] += tr.p_down[k];
        ++cnt;
      }
    mean[so] /= cnt;
    if (so == 1) {
      std::vector<double> d(tr.p_down.size());
      for (std::size_t k = 0; k < d.size(); ++k) d[k] = tr.p_down[k] - mean[so];
      const auto sp = radiation_spectrum(tr.t, d, s.laser->t_on, s.laser->t_p, w, "spin", 8);
      peak = dominant_peak(sp, 0.3, 10.0, 2.0).position;
    }
  }
  return {std::abs(peak / 2.0 - 1.0) <= 0.1 && mean[1] > mean[0],
          fmt("P_down peak at %.3f omega; plateau mean %.4e with spin-orbit, %.4e without", peak, mean[1], mean[0])};
}

double stark_shift(double c, int plateau) {
  const double w = wavelength_to_omega(527);
  SpectrumRecord sp[2];
  for (int kin = 0; kin < 2; ++kin) {
    TermToggles t;
    t.mass_shift = kin == 1;
    t.c_override = c;
    PropagatorSettings s;
    s.grid = make_grid(64, 64, 0.1, 0.1);
    s.potential = z12();
    s.toggles = t;
    s.dt = 0.02;
    s.laser = make_laser_pulse(intensity_to_field(7e16), w, 5.25, plateau, c);
    Propagator p(s);
    auto psi = z12_ground();
    std::vector<double> ts, ax;
    const long n = std::lround(s.laser->t_p / s.dt);
    for (long k = 0; k <= n; ++k) {
      ts.push_back(psi.time);
      ax.push_back(acceleration(psi, z12(), t, LaplacianOrdering::on_function).x);
      if (k < n) p.step(psi);
    }
    sp[kin] = radiation_spectrum(ts, ax, s.laser->t_on, s.laser->t_p, w, "x", 16);
  }
  return line_shift(sp[1], sp[0], 87.4, 88.6).delta;
}

Outcome stark() {
  const double s1 = stark_shift(constants::c, 20), s10 = stark_shift(10 * constants::c, 20);
  const double r = s1 / s10;
  return {s1 < 0.0 && s10 < 0.0 && std::abs(r / 100.0 - 1.0) <= 0.2,
          fmt("1e-g line shift %.4f omega at c, %.5f omega at 10c (ratio %.1f), 20 plateau cycles", s1, s10, r)};
}

struct HhgRun {
  RunResult result;
  int cutoff = 0;
  int predicted = 0;
  double contrast = 0.0;
  double seconds = 0.0;
  double dt = 0.0;
};

HhgRun hhg(int refine) {
  auto c = scenario_config("fig12_hhg_Z3", 2.0);
  c.dt /= refine;
  c.absorber.cadence *= refine;
  RunOptions o;
  o.eigen_cache = scratch() / "eigen_cache";
  o.write_outputs = false;
  const auto t0 = std::chrono::steady_clock::now();
  HhgRun h;
  h.dt = c.dt;
  h.result = run(c, o);
  h.seconds = seconds_since(t0);
  const auto sp = series_spectrum(c, h.result.series, "x");
  const auto strengths = harmonic_strengths(sp, c.observables.max_harmonic);
  h.cutoff = harmonic_cutoff(strengths);
  const double ip = -h.result.initial_energy;
  h.predicted = ponderomotive_and_keldysh(c.laser.E0, c.laser.omega, ip).cutoff_order;
  h.contrast = odd_even_contrast_decades(strengths, 1, std::max(3, h.cutoff));
  return h;
}

const HhgRun& hhg_reference() {
  static const HhgRun h = hhg(1);
  return h;
}

Outcome hhg_cutoff() {
  const auto& h = hhg_reference();
  const bool ok = h.contrast > 1.0 && h.cutoff > 9 &&
                  std::abs(static_cast<double>(h.cutoff) / h.predicted - 1.0) <= 0.2 && h.seconds < 7200;
  return {ok, fmt("cutoff order %d against (Ip + 3.17 Up)/omega = %d; odd/even contrast %.2f decades; %.0f s",
                  h.cutoff, h.predicted, h.contrast, h.seconds)};
}

Outcome ati() {
  auto c = scenario_config("fig14_ati_Z3");
  RunOptions o;
  o.eigen_cache = scratch() / "eigen_cache";
  o.write_outputs = false;
  const auto r = run(c, o);
  const auto pe = photoelectron_spectra(c, r.final_state, *r.ledger, c.photoelectron.X_I, c.photoelectron.X_0);
  const auto& e = pe.energy.energy;
  const auto& d = pe.energy.combined;
  const double w = c.laser.omega;
  const double up = ponderomotive_and_keldysh(c.laser.E0, w, 0.0).Up;
  // Local maxima that dominate their +-omega/2 neighbourhood.
  std::vector<std::size_t> peaks;
  for (std::size_t k = 1; k + 1 < e.size(); ++k) {
    if (!(d[k] > d[k - 1] && d[k] >= d[k + 1])) continue;
    bool top = true;
    for (std::size_t m = 0; m < e.size() && top; ++m)
      if (std::abs(e[m] - e[k]) < 0.5 * w && d[m] > d[k]) top = false;
    if (top) peaks.push_back(k);
  }
  int best_run = 0, cur = 0;
  for (std::size_t i = 1; i < peaks.size(); ++i) {
    const std::size_t k = peaks[i];
    const double bin = 0.5 * (e[std::min(k + 1, e.size() - 1)] - e[k - 1]);
    const double gap = e[k] - e[peaks[i - 1]];
    cur = std::abs(gap - w) <= bin ? cur + 1 : 0;
    best_run = std::max(best_run, cur);
  }
  const int consecutive = best_run + 1;
  // Photon-spaced peaks standing above their neighbouring minima beyond 2 Up.
  int beyond = 0;
  for (std::size_t k : peaks)
    if (e[k] > 2.0 * up) {
      double lo = d[k];
      for (std::size_t m = 0; m < e.size(); ++m)
        if (std::abs(e[m] - e[k]) < 0.5 * w) lo = std::min(lo, d[m]);
      if (d[k] > 2.0 * lo && d[k] > 0.0) ++beyond;
    }
  return {consecutive >= 10 && beyond >= 1,
          fmt("%d consecutive omega-spaced peaks, %d peaks beyond 2Up = %.2f hartree; absorbed %.3e", consecutive,
              beyond, 2 * up, r.ledger->absorbed_probability())};
}

Outcome pes_oracle() {
  const auto g = make_grid(256, 128, 0.25, 1.0);
  const double sx = 2.0, k0 = 2.5;
  PropagatorSettings s;
  s.grid = g;
  s.dt = 0.05;
  s.absorber = MaskFunction::default_for(g);
  Propagator p(s);
  auto psi = spin_up(g, gaussian_field(g, 0, 0, sx, 20.0, k0, 0));
  FluxLedger ledger(g);
  for (int k = 0; k < 800; ++k)
    if (auto a = p.step(psi)) ledger.accumulate(*a);
  const auto m = momentum_spectrum(ledger, psi, psi.time);
  const double c = constants::c;
  const auto es = energy_spectrum(m.density(), g, c);
  // |psi(k)|^2 of the initial packet: Gaussian of width 1/(2 sx) about k0.
  const double sk = 1.0 / (2.0 * sx);
  double worst = 0.0;
  int bins = 0;
  for (std::size_t n = 0; n + 1 < es.positive.energy.size(); ++n) {
    const double eps = es.positive.energy[n];
    const double width = es.positive.energy[n + 1] - eps;
    double pk = std::sqrt(2.0 * eps);
    for (int it = 0; it < 50; ++it) pk -= (kinetic_energy(pk, c) - eps) / (pk - pk * pk * pk / (2 * c * c));
    const double rho = std::exp(-0.5 * std::pow((pk - k0) / sk, 2)) / (std::sqrt(2 * M_PI) * sk);
    const double analytic = rho * energy_jacobian(eps, c);
    if (analytic * width < 1e-4) continue;
    ++bins;
    worst = std::max(worst, std::abs(es.positive.density[n] / analytic - 1.0));
  }
  return {bins > 5 && worst < 0.01, fmt("max relative error %.2e over %d energy bins", worst, bins)};
}

Outcome convergence() {
  const auto& a = hhg_reference();
  const auto b = hhg(2);
  const auto& xa = a.result.series.x;
  const auto& xb = b.result.series.x;
  double scale = 0.0;
  for (double v : xa) scale = std::max(scale, std::abs(v));
  const double dx = std::abs(xa.back() - xb.back());
  const int dcut = std::abs(a.cutoff - b.cutoff);
  return {dcut < 1 && dx < 1e-3 * scale,
          fmt("dt %.4g -> %.4g: cutoff %d -> %d; <x(T)> %.6f -> %.6f bohr (change %.2e of max |<x>| %.3f)", a.dt, b.dt,
              a.cutoff, b.cutoff, xa.back(), xb.back(), dx / scale, scale)};
}

struct Criterion {
  int id;
  const char* name;
  std::function<Outcome()> check;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all = {
      {1, "ground-state energy", ground_state_energy},
      {2, "unitarity", unitarity},
      {3, "free-particle dispersion", dispersion},
      {4, "classical-oracle drift", classical_drift},
      {5, "dipole parity", dipole_parity},
      {6, "c-scaling isolation", c_scaling},
      {7, "spin oscillation", spin_oscillation},
      {8, "relativistic Stark shift", stark},
      {9, "high-harmonic cutoff", hhg_cutoff},
      {10, "above-threshold ionization", ati},
      {11, "photoelectron pipeline oracle", pes_oracle},
      {12, "time-step convergence", convergence},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("error: ") + e.what()};
    }
    failed += o.pass ? 0 : 1;
    std::printf("%s %2d %s: %s [%.0f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(),
                seconds_since(t0));
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
