#include "fwion/eigensolver.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "fwion/observables.hpp"

namespace fwion {

double ground_state_radius(const Potential& p) {
  if (const auto* s = std::get_if<SoftCorePotential>(&p)) {
    // V ~ -k/sqrt(q) + k r^2 / (2 q^{3/2}) near the bottom.
    const double omega_h = std::sqrt(s->k / std::pow(s->q_e, 1.5));
    return 1.0 / std::sqrt(omega_h);
  }
  if (const auto* h = std::get_if<HarmonicPotential>(&p)) return 1.0 / std::sqrt(h->omega);
  throw ConfigError("potential has no bound minimum; give the probe packet explicitly");
}

ProbePacket default_probe(const Potential& p) {
  const double r0 = ground_state_radius(p);
  return {1.5 * r0, 0.9 * r0, 0.8 * r0, 0.65 * r0};
}

ProbePacket rotated(const ProbePacket& p, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * p.x0 - s * p.z0, s * p.x0 + c * p.z0, p.sx, p.sz};
}

namespace {

PropagatorSettings field_free(const Potential& potential, const Grid2D& grid, double dt) {
  PropagatorSettings s;
  s.grid = grid;
  s.potential = potential;
  s.dt = dt;
  return s;
}

long step_count(double t_total, double dt) {
  if (!(t_total > 0) || !(dt > 0)) throw ConfigError("scan length and time step must be positive");
  const long n = std::lround(t_total / dt);
  if (n < 16) throw ConfigError("scan shorter than 16 time steps");
  return n;
}

double hann_half(long n, long n_max) {
  const double c = std::cos(0.5 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(n_max));
  return c * c;
}

}  // namespace

SpectralScan autocorrelation_scan(const SpinorWavefunction& probe, const PropagatorSettings& settings,
                                  const ScanOptions& opts) {
  if (settings.laser) throw ConfigError("spectral scans need a field-free Hamiltonian");
  if (opts.sample_every < 1) throw ConfigError("sample cadence must be >= 1");
  Propagator prop(settings);
  const double dt = settings.dt;
  const long nsteps = step_count(opts.t_total, dt);
  SpectralScan out;
  SpinorWavefunction psi = probe;
  psi.time = 0.0;
  for (long s = 0; s <= nsteps; ++s) {
    if (s % opts.sample_every == 0) {
      out.times.push_back(psi.time);
      out.autocorrelation.push_back(inner(probe, psi));
    }
    if (s < nsteps) prop.step(psi);
  }
  const long n = static_cast<long>(out.times.size()) - 1;
  const double ts = dt * opts.sample_every;
  const double t_span = ts * static_cast<double>(n);
  std::size_t m = 1;
  while (m < static_cast<std::size_t>(2 * n) * static_cast<std::size_t>(std::max(1, opts.pad_factor))) m <<= 1;
  std::vector<Complex> b(m);
  for (long k = 0; k < n; ++k) {
    const double w = hann_half(k, n);
    b[static_cast<std::size_t>(k)] = w * out.autocorrelation[static_cast<std::size_t>(k)];
    if (k > 0) b[m - static_cast<std::size_t>(k)] = w * std::conj(out.autocorrelation[static_cast<std::size_t>(k)]);
  }
  b = fft_1d(std::move(b), false);
  const double de = 2.0 * std::numbers::pi / (static_cast<double>(m) * ts);
  out.energy.resize(m);
  out.amplitude.resize(m);
  for (std::size_t k = 0; k < m; ++k) {
    const std::size_t src = (k + m / 2) % m;
    const long kk = src < m / 2 ? static_cast<long>(src) : static_cast<long>(src) - static_cast<long>(m);
    out.energy[k] = de * static_cast<double>(kk);
    out.amplitude[k] = b[src].real() * ts;
  }
  out.linewidth = 2.0 * std::numbers::pi / t_span;

  const auto& a = out.amplitude;
  double top = 0.0;
  for (std::size_t k = 0; k < m; ++k)
    if (out.energy[k] >= opts.e_min && out.energy[k] <= opts.e_max) top = std::max(top, a[k]);
  std::vector<std::size_t> cand;
  for (std::size_t k = 1; k + 1 < m; ++k) {
    if (out.energy[k] < opts.e_min || out.energy[k] > opts.e_max) continue;
    if (a[k] > a[k - 1] && a[k] >= a[k + 1] && a[k] > opts.rel_threshold * top) cand.push_back(k);
  }
  // Window sidelobes: weak maxima close to a much stronger line.
  const double reach = 4.0 * out.linewidth;
  for (std::size_t k : cand) {
    bool sidelobe = false;
    for (std::size_t q : cand)
      if (q != k && std::abs(out.energy[q] - out.energy[k]) < reach && a[k] < 0.04 * a[q]) sidelobe = true;
    if (sidelobe) continue;
    double pos = out.energy[k], h = a[k];
    if (a[k - 1] > 0 && a[k + 1] > 0) {
      const double l0 = std::log(a[k - 1]), l1 = std::log(a[k]), l2 = std::log(a[k + 1]);
      const double den = l0 - 2 * l1 + l2;
      if (den < 0) {
        const double off = 0.5 * (l0 - l2) / den;
        pos += off * de;
        h = std::exp(l1 - 0.25 * (l0 - l2) * off);
      }
    }
    out.lines.push_back({pos, h, out.linewidth});
  }
  if (out.lines.size() < opts.min_lines) {
    std::ostringstream os;
    os << "spectral scan found " << out.lines.size() << " lines, " << opts.min_lines
       << " requested; T_total=" << opts.t_total << " is too short to separate them";
    throw NumericalError(os.str());
  }
  return out;
}

SpectralScan spectral_scan(const Potential& potential, const Grid2D& grid, double dt, const ProbePacket& probe,
                           const ScanOptions& opts) {
  const auto psi0 = spin_up(grid, gaussian_field(grid, probe.x0, probe.z0, probe.sx, probe.sz));
  return autocorrelation_scan(psi0, field_free(potential, grid, dt), opts);
}

std::vector<Field> project_states(const Potential& potential, const Grid2D& grid, double dt,
                                  const ProbePacket& probe, double t_total, const std::vector<double>& energies) {
  const long nsteps = step_count(t_total, dt);
  Propagator prop(field_free(potential, grid, dt));
  auto psi = spin_up(grid, gaussian_field(grid, probe.x0, probe.z0, probe.sx, probe.sz));
  std::vector<std::vector<double>> acc(energies.size(), std::vector<double>(grid.size(), 0.0));
  for (long s = 0; s < nsteps; ++s) {
    const double w = hann_half(s, nsteps);
    const double t = static_cast<double>(s) * dt;
    for (std::size_t e = 0; e < energies.size(); ++e) {
      const Complex ph = std::polar(1.0, energies[e] * t);
      const double f = s == 0 ? w : 2.0 * w;
      auto& a = acc[e];
      for (std::size_t k = 0; k < grid.size(); ++k) a[k] += f * (ph * psi.up[k]).real();
    }
    prop.step(psi);
  }
  std::vector<Field> out;
  for (auto& a : acc) {
    Field f(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) f[k] = a[k];
    const double n = field_norm(f, grid);
    if (n > 0) scale(f, 1.0 / std::sqrt(n));
    out.push_back(std::move(f));
  }
  return out;
}

Field apply_field_free_hamiltonian(const Field& psi, const Potential& potential, const Grid2D& grid) {
  const auto fourier = Fourier::for_grid(grid);
  Field t = psi;
  fourier->forward_2d(t);
  for (std::size_t j = 0; j < grid.nz(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i)
      t[grid.index(i, j)] *= 0.5 * (grid.kx(i) * grid.kx(i) + grid.kz(j) * grid.kz(j));
  fourier->backward_2d(t);
  for (std::size_t j = 0; j < grid.nz(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const std::size_t k = grid.index(i, j);
      t[k] += potential_value(potential, grid.x(i), grid.z(j)) * psi[k];
    }
  return t;
}

std::pair<double, double> energy_and_variance(const Field& psi, const Potential& potential, const Grid2D& grid) {
  const Field h = apply_field_free_hamiltonian(psi, potential, grid);
  const double n = field_norm(psi, grid);
  const double e = inner(psi, h, grid).real() / n;
  const double h2 = field_norm(h, grid) / n;
  return {e, std::max(0.0, h2 - e * e)};
}

namespace {

/// Removes the components along `basis` (orthonormal) and returns the norm
/// of what is left relative to the input norm.
double orthogonalize(Field& f, const std::vector<const Field*>& basis, const Grid2D& g) {
  const double n0 = std::sqrt(field_norm(f, g));
  if (n0 == 0.0) return 0.0;
  for (int pass = 0; pass < 2; ++pass)
    for (const Field* b : basis) {
      const Complex ov = inner(*b, f, g);
      for (std::size_t k = 0; k < f.size(); ++k) f[k] -= ov * (*b)[k];
    }
  return std::sqrt(field_norm(f, g)) / n0;
}

std::string parity_label(const Field& f, const Grid2D& g) {
  return parities(f, g).inversion >= 0.0 ? "symmetric" : "asymmetric";
}

}  // namespace

EigenResult spectral_eigenstates(const Potential& potential, const Grid2D& grid, const SpectralEigenOptions& opts) {
  const ProbePacket probe = default_probe(potential);
  ScanOptions so = opts.scan;
  so.min_lines = std::max(so.min_lines, opts.n_levels);
  const SpectralScan scan = spectral_scan(potential, grid, opts.dt, probe, so);
  std::vector<double> energies;
  for (std::size_t l = 0; l < opts.n_levels; ++l) energies.push_back(scan.lines[l].energy);

  std::vector<std::vector<Field>> candidates;
  candidates.push_back(project_states(potential, grid, opts.dt, probe, so.t_total, energies));
  for (double angle : opts.extra_probe_angles)
    candidates.push_back(project_states(potential, grid, opts.dt, rotated(probe, angle), so.t_total, energies));

  EigenResult r;
  r.grid = grid;
  std::vector<Field> accepted;
  for (std::size_t l = 0; l < energies.size(); ++l) {
    EigenLevel level;
    level.energy = energies[l];
    level.linewidth = scan.lines[l].linewidth;
    for (std::size_t p = 0; p < candidates.size(); ++p) {
      Field f = candidates[p][l];
      std::vector<const Field*> basis;
      for (const auto& a : accepted) basis.push_back(&a);
      const double frac = orthogonalize(f, basis, grid);
      const bool first = level.members.empty();
      if ((first && frac > 1e-3) || (!first && frac > opts.multiplet_threshold)) {
        scale(f, 1.0 / std::sqrt(field_norm(f, grid)));
        level.members.push_back(accepted.size());
        accepted.push_back(std::move(f));
      }
    }
    if (level.members.empty()) throw NumericalError("projection onto a spectral line vanished");
    level.label = parity_label(accepted[level.members.front()], grid);
    r.levels.push_back(level);
  }
  std::vector<double> variances;
  for (auto& f : accepted) {
    const auto [e, var] = energy_and_variance(f, potential, grid);
    r.state_energies.push_back(e);
    variances.push_back(var);
    r.states.push_back(spin_up(grid, std::move(f)));
  }
  for (auto& level : r.levels) {
    for (std::size_t m : level.members) level.variance = std::max(level.variance, variances[m]);
    level.near_degenerate = std::sqrt(level.variance) > level.linewidth;
  }
  return r;
}

EigenResult imaginary_time_relax(const Potential& potential, const Grid2D& grid, std::size_t n_states,
                                 const RelaxOptions& opts) {
  if (n_states == 0) throw ConfigError("n_states must be positive");
  if (!(opts.dtau > 0)) throw ConfigError("imaginary time step must be positive");
  const auto fourier = Fourier::for_grid(grid);
  const std::size_t n = grid.size();
  const double inv_n = 1.0 / static_cast<double>(n);
  std::vector<double> kin(n), pot(n), k2(n);
  for (std::size_t j = 0; j < grid.nz(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const std::size_t k = grid.index(i, j);
      k2[k] = 0.5 * (grid.kx(i) * grid.kx(i) + grid.kz(j) * grid.kz(j));
      kin[k] = std::exp(-opts.dtau * k2[k]) * inv_n;
      pot[k] = std::exp(-0.5 * opts.dtau * potential_value(potential, grid.x(i), grid.z(j)));
    }
  std::vector<double> vtab(n);
  for (std::size_t j = 0; j < grid.nz(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i) vtab[grid.index(i, j)] = potential_value(potential, grid.x(i), grid.z(j));

  auto energy = [&](const Field& f, Field& work) {
    work = f;
    fourier->forward_2d(work);
    std::vector<double> t(n), v(n);
    for (std::size_t k = 0; k < n; ++k) {
      t[k] = std::norm(work[k]) * k2[k];
      v[k] = std::norm(f[k]) * vtab[k];
    }
    return (pairwise_sum(t) + pairwise_sum(v)) * grid.cell();
  };

  double r0 = 1.0;
  try {
    r0 = ground_state_radius(potential);
  } catch (const ConfigError&) {
  }
  std::mt19937_64 rng(20240607);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);

  EigenResult r;
  r.grid = grid;
  std::vector<Field> found;
  Field work;
  for (std::size_t s = 0; s < n_states; ++s) {
    Field f = gaussian_field(grid, 0.0, 0.0, r0, r0);
    std::vector<double> c(10, 0.0);
    c[0] = 1.0;
    // The lowest state starts from the bare, fully symmetric Gaussian.
    if (s > 0)
      for (auto& v : c) v = coef(rng);
    for (std::size_t j = 0; j < grid.nz(); ++j)
      for (std::size_t i = 0; i < grid.nx(); ++i) {
        const double x = grid.x(i) / r0, z = grid.z(j) / r0;
        const double poly = c[0] + c[1] * x + c[2] * z + c[3] * x * z + c[4] * x * x + c[5] * z * z +
                            c[6] * x * x * x + c[7] * z * z * z + c[8] * x * x * z + c[9] * x * z * z;
        f[grid.index(i, j)] *= poly;
      }
    std::vector<const Field*> basis;
    for (const auto& b : found) basis.push_back(&b);
    orthogonalize(f, basis, grid);
    normalize_field(f, grid);
    double e_prev = energy(f, work);
    bool converged = false;
    for (long step = 1; step <= opts.max_steps; ++step) {
      for (std::size_t k = 0; k < n; ++k) f[k] *= pot[k];
      fourier->raw_forward_2d(f.data());
      for (std::size_t k = 0; k < n; ++k) f[k] *= kin[k];
      fourier->raw_backward_2d(f.data());
      for (std::size_t k = 0; k < n; ++k) f[k] *= pot[k];
      orthogonalize(f, basis, grid);
      normalize_field(f, grid);
      const double e = energy(f, work);
      if (!std::isfinite(e)) throw NumericalError("imaginary-time relaxation produced a non-finite energy");
      if (step > 10 && std::abs(e - e_prev) < opts.tolerance * std::max(1.0, std::abs(e))) {
        converged = true;
        e_prev = e;
        break;
      }
      e_prev = e;
    }
    if (!converged) {
      std::ostringstream os;
      os << "imaginary-time relaxation of state " << s << " did not converge in " << opts.max_steps << " steps";
      throw NumericalError(os.str());
    }
    r.state_energies.push_back(e_prev);
    found.push_back(f);
  }
  for (std::size_t s = 0; s < found.size(); ++s) {
    const double e = r.state_energies[s];
    if (!r.levels.empty() &&
        std::abs(e - r.levels.back().energy) < opts.degeneracy_tolerance * std::max(1.0, std::abs(e))) {
      r.levels.back().members.push_back(s);
    } else {
      EigenLevel level;
      level.energy = e;
      level.label = parity_label(found[s], grid);
      level.members.push_back(s);
      r.levels.push_back(level);
    }
  }
  for (auto& level : r.levels) {
    for (std::size_t m : level.members) {
      const auto [e, var] = energy_and_variance(found[m], potential, grid);
      level.variance = std::max(level.variance, var);
    }
  }
  for (auto& f : found) r.states.push_back(spin_up(grid, std::move(f)));
  return r;
}

Field apply_f_ly(const Field& psi, const Potential& potential, const Grid2D& grid, double c) {
  const auto fourier = Fourier::for_grid(grid);
  Field px = psi;
  fourier->forward_2d(px);
  Field pz = px;
  for (std::size_t j = 0; j < grid.nz(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const std::size_t k = grid.index(i, j);
      px[k] *= grid.kx(i);
      pz[k] *= grid.kz(j);
    }
  fourier->backward_2d(px);
  fourier->backward_2d(pz);
  Field out(grid.size());
  for (std::size_t j = 0; j < grid.nz(); ++j)
    for (std::size_t i = 0; i < grid.nx(); ++i) {
      const std::size_t k = grid.index(i, j);
      const double f = so_prefactor(potential, grid.x(i), grid.z(j), c);
      out[k] = f * (grid.z(j) * px[k] - grid.x(i) * pz[k]);
    }
  return out;
}

SoSplitting field_free_so_splitting(const EigenResult& result, std::size_t level, const Potential& potential,
                                    double c) {
  if (level >= result.levels.size()) throw std::out_of_range("no such level");
  const auto& members = result.levels[level].members;
  const Grid2D& g = result.grid;
  const auto dim = static_cast<Eigen::Index>(members.size());
  Eigen::MatrixXcd m(dim, dim);
  std::vector<Field> applied;
  for (std::size_t b : members) applied.push_back(apply_f_ly(result.states[b].up, potential, g, c));
  for (Eigen::Index a = 0; a < dim; ++a)
    for (Eigen::Index b = 0; b < dim; ++b)
      m(a, b) = inner(result.states[members[static_cast<std::size_t>(a)]].up, applied[static_cast<std::size_t>(b)], g);
  const Eigen::MatrixXcd herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(herm);
  SoSplitting out;
  double top = 0.0;
  for (Eigen::Index k = 0; k < dim; ++k) {
    out.subspace_eigenvalues.push_back(solver.eigenvalues()(k));
    top = std::max(top, std::abs(solver.eigenvalues()(k)));
  }
  out.splitting = 2.0 * top;
  return out;
}

}  // namespace fwion
