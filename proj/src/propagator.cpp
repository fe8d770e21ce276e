#include "fwion/propagator.hpp"

#include <cmath>
#include <sstream>

namespace fwion {

Propagator::Propagator(PropagatorSettings settings) : s_(std::move(settings)) {
  s_.toggles.validate();
  if (!(s_.dt != 0.0) || !std::isfinite(s_.dt)) throw ConfigError("time step must be non-zero");
  if (s_.absorber_cadence < 1) throw ConfigError("absorber cadence must be >= 1");
  const Grid2D& g = s_.grid;
  fourier_ = Fourier::for_grid(g);
  const double c = s_.toggles.c();
  const double h = 0.5 * s_.dt;
  const double inv_n = 1.0 / static_cast<double>(g.size());

  kinetic_half_.resize(g.size());
  for (std::size_t j = 0; j < g.nz(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double k2 = g.kx(i) * g.kx(i) + g.kz(j) * g.kz(j);
      double t = 0.5 * k2;
      if (s_.toggles.mass_shift) t -= k2 * k2 / (8.0 * c * c);
      kinetic_half_[g.index(i, j)] = std::polar(inv_n, -h * t);
    }

  potential_half_.resize(g.size());
  for (std::size_t j = 0; j < g.nz(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      double v = potential_value(s_.potential, g.x(i), g.z(j));
      if (s_.toggles.darwin) v -= potential_laplacian(s_.potential, g.x(i), g.z(j)) / (8.0 * c * c);
      potential_half_[g.index(i, j)] = std::polar(1.0, -h * v);
    }

  if (s_.toggles.spin_orbit) {
    so_f_.resize(g.size());
    for (std::size_t j = 0; j < g.nz(); ++j)
      for (std::size_t i = 0; i < g.nx(); ++i)
        so_f_[g.index(i, j)] = so_prefactor(s_.potential, g.x(i), g.z(j), c);
  }
  if (s_.absorber) mask_ = s_.absorber->table(g);
}

Propagator::RowFields Propagator::row_fields(double t) const {
  const Grid2D& g = s_.grid;
  RowFields r{std::vector<double>(g.nz()), std::vector<double>(g.nz()), std::vector<double>(g.nz()), {}};
  if (!s_.laser) return r;
  if (s_.toggles.dipole_approximation) {
    const auto f = pulse_fields(*s_.laser, 0.0, t, true);
    std::fill(r.A.begin(), r.A.end(), f.A);
    std::fill(r.E.begin(), r.E.end(), f.E);
    std::fill(r.B.begin(), r.B.end(), f.B);
    return r;
  }
  for (std::size_t j = 0; j < g.nz(); ++j) {
    const auto f = pulse_fields(*s_.laser, g.z(j), t, false);
    r.A[j] = f.A;
    r.E[j] = f.E;
    r.B[j] = f.B;
  }
  return r;
}

Propagator::RowFields Propagator::step_potential(double t0) const {
  const Grid2D& g = s_.grid;
  RowFields r{std::vector<double>(g.nz()), {}, {}, std::vector<double>(g.nz())};
  if (!s_.laser) return r;
  const bool dip = s_.toggles.dipole_approximation;
  for (std::size_t j = 0; j < g.nz(); ++j) {
    if (dip && j > 0) {
      r.A[j] = r.A[0];
      r.A2[j] = r.A2[0];
      continue;
    }
    const auto m = step_average(*s_.laser, g.z(j), t0, t0 + s_.dt, dip);
    r.A[j] = m.A;
    r.A2[j] = m.A2;
  }
  return r;
}

void Propagator::build_x_phase(const RowFields& rows, Field& table) const {
  const Grid2D& g = s_.grid;
  const std::size_t nx = g.nx();
  const double c = s_.toggles.c();
  table.resize(g.size());
  const std::size_t half = nx / 2;
  std::vector<Complex> pos(half + 1);
  for (std::size_t j = 0; j < g.nz(); ++j) {
    const double theta = -0.5 * s_.dt * rows.A[j] / c * g.dkx();
    const Complex w = std::polar(1.0, theta);
    pos[0] = 1.0;
    for (std::size_t m = 1; m <= half; ++m)
      pos[m] = (m % 32 == 0) ? std::polar(1.0, theta * static_cast<double>(m)) : pos[m - 1] * w;
    Complex* row = table.data() + j * nx;
    for (std::size_t i = 0; i < nx; ++i) {
      const long m = static_cast<long>(i) < static_cast<long>(nx - half) ? static_cast<long>(i)
                                                                        : static_cast<long>(i) - static_cast<long>(nx);
      row[i] = m >= 0 ? pos[static_cast<std::size_t>(m)] : std::conj(pos[static_cast<std::size_t>(-m)]);
    }
  }
}

void Propagator::build_p_row_phase(const RowFields& rows, std::vector<Complex>& out) const {
  const double c = s_.toggles.c();
  const double coef = s_.toggles.printed_a2 ? 1.0 : 0.5;
  out.resize(rows.A2.size());
  for (std::size_t j = 0; j < rows.A2.size(); ++j) {
    out[j] = std::polar(1.0, -0.5 * s_.dt * coef * rows.A2[j] / (c * c));
  }
}

void Propagator::half_kinetic_then_x(Complex* f, const Field& xphase) const {
  const std::size_t n = s_.grid.size();
  if (xphase.empty()) {
    fourier_->raw_forward_2d(f);
    for (std::size_t k = 0; k < n; ++k) f[k] *= kinetic_half_[k];
    fourier_->raw_backward_2d(f);
    return;
  }
  fourier_->raw_forward_2d(f);
  for (std::size_t k = 0; k < n; ++k) f[k] *= kinetic_half_[k];
  fourier_->raw_backward_z(f);
  for (std::size_t k = 0; k < n; ++k) f[k] *= xphase[k];
  fourier_->raw_backward_x(f);
}

void Propagator::x_then_half_kinetic(Complex* f, const Field& xphase) const {
  const std::size_t n = s_.grid.size();
  if (xphase.empty()) {
    fourier_->raw_forward_2d(f);
    for (std::size_t k = 0; k < n; ++k) f[k] *= kinetic_half_[k];
    fourier_->raw_backward_2d(f);
    return;
  }
  fourier_->raw_forward_x(f);
  for (std::size_t k = 0; k < n; ++k) f[k] *= xphase[k];
  fourier_->raw_forward_z(f);
  for (std::size_t k = 0; k < n; ++k) f[k] *= kinetic_half_[k];
  fourier_->raw_backward_2d(f);
}

void Propagator::position_half(Complex* f, const std::vector<Complex>& rowphase) const {
  const Grid2D& g = s_.grid;
  const std::size_t nx = g.nx();
  for (std::size_t j = 0; j < g.nz(); ++j) {
    const Complex r = rowphase[j];
    Complex* row = f + j * nx;
    const Complex* p = potential_half_.data() + j * nx;
    for (std::size_t i = 0; i < nx; ++i) row[i] *= p[i] * r;
  }
}

void Propagator::momentum_derivatives(const Field& in, Field& px, Field& pz) const {
  const Grid2D& g = s_.grid;
  const double inv_n = 1.0 / static_cast<double>(g.size());
  wk_ = in;
  fourier_->raw_forward_2d(wk_.data());
  px.resize(g.size());
  pz.resize(g.size());
  for (std::size_t j = 0; j < g.nz(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      px[k] = wk_[k] * (g.kx(i) * inv_n);
      pz[k] = wk_[k] * (g.kz(j) * inv_n);
    }
  fourier_->raw_backward_2d(px.data());
  fourier_->raw_backward_2d(pz.data());
}

void Propagator::apply_spin_scalar(const Field& in, Field& out, double t) const {
  const Grid2D& g = s_.grid;
  const double c = s_.toggles.c();
  const RowFields rows = row_fields(t);
  out.assign(g.size(), Complex{});
  if (s_.toggles.spin_orbit) momentum_derivatives(in, wx_, wz_);
  for (std::size_t j = 0; j < g.nz(); ++j) {
    const double b = s_.toggles.pauli ? rows.B[j] / (2.0 * c) : 0.0;
    const double e = -rows.E[j] / (4.0 * c * c);
    const double z = g.z(j);
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      Complex v = b * in[k];
      if (s_.toggles.spin_orbit) v += e * wz_[k] + so_f_[k] * (z * wx_[k] - g.x(i) * wz_[k]);
      out[k] = v;
    }
  }
}

void Propagator::apply_spin_block(SpinorWavefunction& psi, double t) const {
  if (!s_.toggles.spin_coupled()) return;
  const double dt = s_.dt;
  const std::size_t n = s_.grid.size();
  if (!s_.toggles.spin_orbit) {
    // H_P alone is position diagonal: no transforms needed.
    const RowFields rows = row_fields(t);
    const double c = s_.toggles.c();
    const std::size_t nx = s_.grid.nx();
    for (std::size_t j = 0; j < s_.grid.nz(); ++j) {
      const double b = rows.B[j] / (2.0 * c);
      const double a1 = dt * b, a2 = 0.5 * dt * dt * b * b;
      for (std::size_t i = 0; i < nx; ++i) {
        const std::size_t k = j * nx + i;
        const Complex u = psi.up[k], d = psi.down[k];
        psi.up[k] = u - a1 * d - a2 * u;
        psi.down[k] = d + a1 * u - a2 * d;
      }
    }
    return;
  }
  apply_spin_scalar(psi.up, hu_, t);
  apply_spin_scalar(hu_, hhu_, t);
  const bool down = !is_zero(psi.down);
  if (down) {
    apply_spin_scalar(psi.down, hd_, t);
    apply_spin_scalar(hd_, hhd_, t);
  }
  const double a2 = 0.5 * dt * dt;
  for (std::size_t k = 0; k < n; ++k) {
    const Complex u = psi.up[k], d = psi.down[k];
    const Complex h_d = down ? hd_[k] : Complex{};
    const Complex hh_d = down ? hhd_[k] : Complex{};
    psi.up[k] = u - dt * h_d - a2 * hhu_[k];
    psi.down[k] = d + dt * hu_[k] - a2 * hh_d;
  }
}

std::optional<Absorption> Propagator::step(SpinorWavefunction& psi) {
  if (!(psi.grid == s_.grid)) throw std::invalid_argument("wavefunction grid does not match propagator");
  const double tmid = psi.time + 0.5 * s_.dt;
  const bool coupled = s_.toggles.spin_coupled();
  const bool do_down = coupled || !is_zero(psi.down);

  const RowFields rows = step_potential(psi.time);
  Field xphase;
  bool any_a = false;
  for (double a : rows.A) any_a = any_a || a != 0.0;
  if (any_a) build_x_phase(rows, xphase);
  std::vector<Complex> prow;
  build_p_row_phase(rows, prow);

  half_kinetic_then_x(psi.up.data(), xphase);
  position_half(psi.up.data(), prow);
  if (do_down) {
    half_kinetic_then_x(psi.down.data(), xphase);
    position_half(psi.down.data(), prow);
  }
  if (coupled) apply_spin_block(psi, tmid);
  position_half(psi.up.data(), prow);
  x_then_half_kinetic(psi.up.data(), xphase);
  if (do_down || coupled) {
    position_half(psi.down.data(), prow);
    x_then_half_kinetic(psi.down.data(), xphase);
  }

  psi.time += s_.dt;
  ++steps_;
  if (steps_ % 100 == 0) {
    const double n = norm(psi);
    if (!std::isfinite(n)) {
      std::ostringstream os;
      os << "non-finite wavefunction at t=" << psi.time << " after " << steps_
         << " steps; time step too large or grid too coarse";
      throw NumericalError(os.str());
    }
  }
  if (!mask_.empty() && steps_ % s_.absorber_cadence == 0) return apply_absorber(psi, mask_);
  return std::nullopt;
}

}  // namespace fwion
