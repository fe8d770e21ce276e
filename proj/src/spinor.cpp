#include "fwion/spinor.hpp"

#include <cmath>
#include <stdexcept>

namespace fwion {

namespace {

template <class T>
T pairwise(const T* v, std::size_t n) {
  if (n <= 32) {
    T s{};
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise(v, h) + pairwise(v + h, n - h);
}

// Row sums first, then pairwise over rows, to keep the working set small.
template <class T, class F>
T grid_reduce(const Grid2D& g, F&& term) {
  std::vector<T> rows(g.nz());
  std::vector<T> buf(g.nx());
  for (std::size_t j = 0; j < g.nz(); ++j) {
    for (std::size_t i = 0; i < g.nx(); ++i) buf[i] = term(i, j, g.index(i, j));
    rows[j] = pairwise(buf.data(), buf.size());
  }
  return pairwise(rows.data(), rows.size());
}

}  // namespace

double pairwise_sum(std::span<const double> v) { return pairwise(v.data(), v.size()); }
Complex pairwise_sum(std::span<const Complex> v) { return pairwise(v.data(), v.size()); }

double field_norm(const Field& f, const Grid2D& g) {
  return grid_reduce<double>(g, [&](std::size_t, std::size_t, std::size_t k) { return std::norm(f[k]); }) *
         g.cell();
}

Complex inner(const Field& a, const Field& b, const Grid2D& g) {
  return grid_reduce<Complex>(
             g, [&](std::size_t, std::size_t, std::size_t k) { return std::conj(a[k]) * b[k]; }) *
         g.cell();
}

Complex inner(const SpinorWavefunction& a, const SpinorWavefunction& b) {
  return inner(a.up, b.up, a.grid) + inner(a.down, b.down, a.grid);
}

double norm(const SpinorWavefunction& psi) {
  return field_norm(psi.up, psi.grid) + field_norm(psi.down, psi.grid);
}

void normalize(SpinorWavefunction& psi) {
  const double n = norm(psi);
  if (!(n > 0.0)) throw NumericalError("cannot normalize a zero wavefunction");
  const double s = 1.0 / std::sqrt(n);
  scale(psi.up, s);
  scale(psi.down, s);
}

double SpinMatrix::max_abs() const {
  double r = 0;
  for (auto v : m) r = std::max(r, std::abs(v));
  return r;
}

double expectation(const SpinorWavefunction& psi, const DiagonalOperator& op) {
  const Grid2D& g = psi.grid;
  const Field* up = &psi.up;
  const Field* dn = &psi.down;
  Field uk, dk;
  if (op.basis == DiagonalOperator::Basis::momentum) {
    auto fourier = Fourier::for_grid(g);
    uk = psi.up;
    dk = psi.down;
    fourier->forward_2d(uk);
    fourier->forward_2d(dk);
    up = &uk;
    dn = &dk;
  }
  const auto& m = op.spin.m;
  const bool mom = op.basis == DiagonalOperator::Basis::momentum;
  double fmax = 0.0;
  Complex total = grid_reduce<Complex>(g, [&](std::size_t i, std::size_t j, std::size_t k) {
    const Complex f = mom ? op.function(g.kx(i), g.kz(j)) : op.function(g.x(i), g.z(j));
    fmax = std::max(fmax, std::abs(f));
    const Complex u = (*up)[k], d = (*dn)[k];
    const Complex ou = m[0] * u + m[1] * d;
    const Complex od = m[2] * u + m[3] * d;
    return f * (std::conj(u) * ou + std::conj(d) * od);
  });
  total *= g.cell();
  // Parseval: the unitary transform leaves sum|psi|^2 dx dz unchanged, and the
  // momentum-space sum uses the same cell weight.
  const double scale_o = fmax * op.spin.max_abs() * std::max(norm(psi), 1e-300);
  if (std::abs(total.imag()) > 1e-8 * scale_o)
    throw std::domain_error("expectation value has a non-Hermitian residue " +
                            std::to_string(total.imag()));
  return total.real();
}

Field gaussian_field(const Grid2D& g, double x0, double z0, double sx, double sz, double kx0,
                     double kz0) {
  Field f(g.size());
  for (std::size_t j = 0; j < g.nz(); ++j) {
    const double dz = g.z(j) - z0;
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const double dx = g.x(i) - x0;
      const double a = -dx * dx / (4 * sx * sx) - dz * dz / (4 * sz * sz);
      f[g.index(i, j)] = std::exp(a) * std::polar(1.0, kx0 * g.x(i) + kz0 * g.z(j));
    }
  }
  const double n = field_norm(f, g);
  scale(f, 1.0 / std::sqrt(n));
  return f;
}

SpinorWavefunction spin_up(const Grid2D& g, Field spatial, double time) {
  SpinorWavefunction psi(g);
  psi.up = std::move(spatial);
  psi.time = time;
  return psi;
}

bool is_zero(const Field& f) {
  for (const auto& v : f)
    if (v.real() != 0.0 || v.imag() != 0.0) return false;
  return true;
}

void normalize_field(Field& f, const Grid2D& g) {
  const double n = field_norm(f, g);
  if (n > 0.0) scale(f, 1.0 / std::sqrt(n));
}

}  // namespace fwion
