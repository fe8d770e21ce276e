#include "fwion/photoelectron.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fwion/records.hpp"
#include "fwion/snapshot.hpp"

namespace fwion {

FluxLedger::FluxLedger(const Grid2D& grid) : grid_(grid), up_(grid.size()), down_(grid.size()) {}

void FluxLedger::accumulate(const SpinorWavefunction& flux, double removed_probability) {
  if (!(flux.grid == grid_)) throw std::invalid_argument("flux grid does not match the ledger");
  const auto fourier = Fourier::for_grid(grid_);
  const std::size_t nx = grid_.nx();
  std::vector<Complex> phase(nx);
  for (std::size_t i = 0; i < nx; ++i) phase[i] = std::polar(1.0, 0.5 * grid_.kx(i) * grid_.kx(i) * flux.time);
  Field work;
  for (int comp = 0; comp < 2; ++comp) {
    const Field& src = comp == 0 ? flux.up : flux.down;
    if (is_zero(src)) continue;
    Field& dst = comp == 0 ? up_ : down_;
    work = src;
    fourier->forward_x(work);
    for (std::size_t j = 0; j < grid_.nz(); ++j)
      for (std::size_t i = 0; i < nx; ++i) dst[j * nx + i] += phase[i] * work[j * nx + i];
  }
  absorbed_ += removed_probability;
  ++entries_;
}

void FluxLedger::save(const std::filesystem::path& stem, std::uint64_t toggles_hash) const {
  SpinorWavefunction acc(grid_);
  acc.up = up_;
  acc.down = down_;
  write_snapshot(stem.string() + ".snap", acc, toggles_hash, static_cast<std::uint64_t>(entries_));
  char buf[32];
  std::snprintf(buf, sizeof buf, "%a", absorbed_);
  write_json(stem.string() + ".json", {{"absorbed_probability", absorbed_},
                                       {"absorbed_probability_hex", buf},
                                       {"entries", entries_},
                                       {"representation", "kx_z"}});
}

FluxLedger FluxLedger::load(const std::filesystem::path& stem) {
  const std::filesystem::path snap = stem.string() + ".snap", meta = stem.string() + ".json";
  if (!std::filesystem::exists(snap) || !std::filesystem::exists(meta))
    throw std::runtime_error("flux ledger " + stem.string() +
                             " is missing; cannot resume without it, the photoelectron spectrum would lose the "
                             "flux absorbed so far");
  SnapshotHeader h;
  const SpinorWavefunction acc = read_snapshot(snap, &h);
  const auto j = read_json(meta);
  FluxLedger l(acc.grid);
  l.up_ = acc.up;
  l.down_ = acc.down;
  l.absorbed_ = std::strtod(j.at("absorbed_probability_hex").get<std::string>().c_str(), nullptr);
  l.entries_ = j.at("entries").get<long>();
  return l;
}

void IonizationWindow::validate(const Grid2D& g) const {
  if (!(X_I >= 0) || !(X_0 >= 0)) throw ConfigError("ionization window widths must be non-negative");
  if (!(X_I + X_0 < g.x_max())) throw ConfigError("ionization window X_I + X_0 exceeds the box");
}

double IonizationWindow::factor(double x) const {
  const double a = std::abs(x);
  if (a < X_I) return 0.0;
  if (a > X_I + X_0 || X_0 == 0.0) return 1.0;
  const double s = std::sin(0.5 * std::numbers::pi * (a - X_I) / X_0);
  return s * s;
}

SpinorWavefunction slice_residual(const SpinorWavefunction& psi, const IonizationWindow& window) {
  window.validate(psi.grid);
  SpinorWavefunction out = psi;
  const Grid2D& g = psi.grid;
  for (std::size_t i = 0; i < g.nx(); ++i) {
    const double f = window.factor(g.x(i));
    for (std::size_t j = 0; j < g.nz(); ++j) {
      out.up[g.index(i, j)] *= f;
      out.down[g.index(i, j)] *= f;
    }
  }
  return out;
}

MomentumSpectrum momentum_spectrum(const FluxLedger& ledger, const SpinorWavefunction& psi_out, double t_f) {
  if (!(ledger.grid() == psi_out.grid)) throw std::invalid_argument("ledger and wavefunction grids differ");
  const Grid2D& g = psi_out.grid;
  const auto fourier = Fourier::for_grid(g);
  MomentumSpectrum m{g, psi_out.up, psi_out.down};
  fourier->forward_x(m.up);
  fourier->forward_x(m.down);
  const std::size_t nx = g.nx();
  for (std::size_t i = 0; i < nx; ++i) {
    const Complex ph = std::polar(1.0, -0.5 * g.kx(i) * g.kx(i) * t_f);
    for (std::size_t j = 0; j < g.nz(); ++j) {
      const std::size_t k = j * nx + i;
      m.up[k] += ph * ledger.up()[k];
      m.down[k] += ph * ledger.down()[k];
    }
  }
  return m;
}

namespace {

std::vector<double> column_density(const Field& f, const Grid2D& g) {
  std::vector<double> out(g.nx());
  std::vector<double> col(g.nz());
  const double w = g.dx() * g.dz() / g.dkx();
  for (std::size_t i = 0; i < g.nx(); ++i) {
    for (std::size_t j = 0; j < g.nz(); ++j) col[j] = std::norm(f[g.index(i, j)]);
    out[i] = pairwise_sum(col) * w;
  }
  return out;
}

}  // namespace

std::vector<double> MomentumSpectrum::density_up() const { return column_density(up, grid); }
std::vector<double> MomentumSpectrum::density_down() const { return column_density(down, grid); }

std::vector<double> MomentumSpectrum::density() const {
  auto u = density_up();
  const auto d = density_down();
  for (std::size_t i = 0; i < u.size(); ++i) u[i] += d[i];
  return u;
}

double MomentumSpectrum::total_probability() const { return pairwise_sum(density()) * grid.dkx(); }

double kinetic_energy(double p, double c) { return 0.5 * p * p - p * p * p * p / (8.0 * c * c); }

double energy_jacobian(double eps, double c) { return (1.0 + eps / (c * c)) / std::sqrt(2.0 * eps); }

EnergySpectrum energy_spectrum(const std::vector<double>& density, const Grid2D& grid, double c) {
  if (density.size() != grid.nx()) throw std::invalid_argument("density does not match the grid");
  double pmax = 0.0;
  for (double k : grid.kxs()) pmax = std::max(pmax, std::abs(k));
  if (pmax * pmax >= 2.0 * c * c)
    throw ConfigError("momentum lattice reaches |p| >= sqrt(2) c where epsilon(p) turns over; refine dx or raise c");
  std::vector<std::pair<double, double>> pos, neg;
  for (std::size_t i = 0; i < grid.nx(); ++i) {
    const double p = grid.kx(i);
    if (p == 0.0) continue;
    const double eps = kinetic_energy(p, c);
    (p > 0 ? pos : neg).emplace_back(eps, density[i] * energy_jacobian(eps, c));
  }
  std::sort(pos.begin(), pos.end());
  std::sort(neg.begin(), neg.end());
  EnergySpectrum s;
  for (auto [e, v] : pos) {
    s.positive.energy.push_back(e);
    s.positive.density.push_back(v);
  }
  for (auto [e, v] : neg) {
    s.negative.energy.push_back(e);
    s.negative.density.push_back(v);
  }
  s.energy = s.positive.energy;
  for (std::size_t k = 0; k < s.energy.size(); ++k)
    s.combined.push_back(s.positive.density[k] + interpolate(s.negative.energy, s.negative.density, s.energy[k]));
  return s;
}

double interpolate(const std::vector<double>& x, const std::vector<double>& y, double at) {
  if (x.empty() || at < x.front() || at > x.back()) return 0.0;
  auto it = std::lower_bound(x.begin(), x.end(), at);
  const std::size_t k = static_cast<std::size_t>(it - x.begin());
  if (k == 0 || x[k] == at) return y[k];
  const double t = (at - x[k - 1]) / (x[k] - x[k - 1]);
  return (1 - t) * y[k - 1] + t * y[k];
}

std::pair<std::vector<double>, std::vector<double>> resample_uniform(const std::vector<double>& energy,
                                                                     const std::vector<double>& values,
                                                                     double d_eps) {
  if (!(d_eps > 0)) throw ConfigError("energy spacing must be positive");
  std::vector<double> e, v;
  if (energy.size() < 2) return {e, v};
  for (double x = d_eps; x <= energy.back(); x += d_eps) {
    auto it = std::lower_bound(energy.begin(), energy.end(), x);
    double y = 0.0;
    if (it == energy.begin()) {
      y = values.front() * x / energy.front();
    } else if (it != energy.end()) {
      const std::size_t k = static_cast<std::size_t>(it - energy.begin());
      const double t = (x - energy[k - 1]) / (energy[k] - energy[k - 1]);
      y = (1 - t) * values[k - 1] + t * values[k];
    }
    e.push_back(x);
    v.push_back(y);
  }
  return {e, v};
}

}  // namespace fwion
