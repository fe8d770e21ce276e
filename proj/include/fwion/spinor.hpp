#pragma once

#include <array>
#include <functional>
#include <span>

#include "fwion/fourier.hpp"
#include "fwion/grid.hpp"
#include "fwion/types.hpp"

namespace fwion {

/// Two-component wavefunction on a shared grid. Amplitudes are normalized so
/// that sum(|up|^2 + |down|^2) dx dz is the probability in the box.
struct SpinorWavefunction {
  Grid2D grid;
  Field up;
  Field down;
  double time = 0.0;

  SpinorWavefunction() = default;
  explicit SpinorWavefunction(const Grid2D& g) : grid(g), up(g.size()), down(g.size()) {}
};

/// Pairwise summation; result does not depend on thread count or chunking.
double pairwise_sum(std::span<const double> v);
Complex pairwise_sum(std::span<const Complex> v);

/// sum |f|^2 dx dz
double field_norm(const Field& f, const Grid2D& g);
/// sum conj(a) b dx dz
Complex inner(const Field& a, const Field& b, const Grid2D& g);
/// <a|b> summed over both spin components.
Complex inner(const SpinorWavefunction& a, const SpinorWavefunction& b);

double norm(const SpinorWavefunction& psi);
void normalize(SpinorWavefunction& psi);
/// Scales a single field to unit norm; a zero field is left alone.
void normalize_field(Field& f, const Grid2D& g);

/// Spin matrix [[m00, m01], [m10, m11]].
struct SpinMatrix {
  std::array<Complex, 4> m{Complex{1}, Complex{0}, Complex{0}, Complex{1}};

  static SpinMatrix identity() { return {}; }
  static SpinMatrix sigma_x() { return {{Complex{0}, Complex{1}, Complex{1}, Complex{0}}}; }
  static SpinMatrix sigma_y() { return {{Complex{0}, Complex{0, -1}, Complex{0, 1}, Complex{0}}}; }
  static SpinMatrix sigma_z() { return {{Complex{1}, Complex{0}, Complex{0}, Complex{-1}}}; }
  /// Projector onto spin-down.
  static SpinMatrix down_projector() { return {{Complex{0}, Complex{0}, Complex{0}, Complex{1}}}; }
  double max_abs() const;
};

/// Operator of the form S (x) f where f is diagonal either in position
/// (f(x, z)) or in momentum (f(kx, kz)).
struct DiagonalOperator {
  enum class Basis { position, momentum };
  Basis basis = Basis::position;
  std::function<Complex(double, double)> function;
  SpinMatrix spin = SpinMatrix::identity();

  static DiagonalOperator position(std::function<Complex(double, double)> f,
                                   SpinMatrix s = SpinMatrix::identity()) {
    return {Basis::position, std::move(f), s};
  }
  static DiagonalOperator momentum(std::function<Complex(double, double)> f,
                                   SpinMatrix s = SpinMatrix::identity()) {
    return {Basis::momentum, std::move(f), s};
  }
};

/// Re<psi|O|psi> as the grid double sum. An imaginary part larger than
/// 1e-8 * max|O| * norm means O was not Hermitian and raises
/// std::domain_error.
double expectation(const SpinorWavefunction& psi, const DiagonalOperator& op);

/// Gaussian exp(-(x-x0)^2/(4 sx^2) - (z-z0)^2/(4 sz^2) + i(kx0 x + kz0 z)),
/// normalized to one over the grid. sx, sz are the position standard
/// deviations of |psi|^2.
Field gaussian_field(const Grid2D& g, double x0, double z0, double sx, double sz, double kx0 = 0.0,
                     double kz0 = 0.0);

/// True if every entry is exactly zero.
bool is_zero(const Field& f);

/// Spin-up spinor with the given spatial part.
SpinorWavefunction spin_up(const Grid2D& g, Field spatial, double time = 0.0);

}  // namespace fwion
