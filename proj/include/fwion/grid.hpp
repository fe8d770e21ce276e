#pragma once

#include <cstddef>
#include <vector>

namespace fwion {

/// Uniform periodic lattice in the polarization (x) and propagation (z)
/// directions. Point (nx/2, nz/2) sits exactly on the nucleus, so
/// x_i = (i - nx/2) dx. Momenta follow the FFT ordering.
class Grid2D {
 public:
  Grid2D() = default;

  std::size_t nx() const { return nx_; }
  std::size_t nz() const { return nz_; }
  std::size_t size() const { return nx_ * nz_; }
  double dx() const { return dx_; }
  double dz() const { return dz_; }
  double cell() const { return dx_ * dz_; }

  std::size_t index(std::size_t i, std::size_t j) const { return j * nx_ + i; }
  std::size_t origin_i() const { return nx_ / 2; }
  std::size_t origin_j() const { return nz_ / 2; }

  double x(std::size_t i) const { return x_[i]; }
  double z(std::size_t j) const { return z_[j]; }
  double kx(std::size_t i) const { return kx_[i]; }
  double kz(std::size_t j) const { return kz_[j]; }
  const std::vector<double>& xs() const { return x_; }
  const std::vector<double>& zs() const { return z_; }
  const std::vector<double>& kxs() const { return kx_; }
  const std::vector<double>& kzs() const { return kz_; }

  double x_min() const { return x_.front(); }
  double x_max() const { return x_.back(); }
  double z_min() const { return z_.front(); }
  double z_max() const { return z_.back(); }
  double dkx() const;
  double dkz() const;
  /// Distance from the origin to the periodic seam (nx/2 * dx).
  double half_width_x() const { return static_cast<double>(nx_ / 2) * dx_; }
  double half_width_z() const { return static_cast<double>(nz_ / 2) * dz_; }

  bool operator==(const Grid2D& o) const {
    return nx_ == o.nx_ && nz_ == o.nz_ && dx_ == o.dx_ && dz_ == o.dz_;
  }

  friend Grid2D make_grid(std::size_t nx, std::size_t nz, double dx, double dz);

 private:
  std::size_t nx_ = 0, nz_ = 0;
  double dx_ = 0, dz_ = 0;
  std::vector<double> x_, z_, kx_, kz_;
};

/// Throws ConfigError for n < 8 or non-positive spacing.
Grid2D make_grid(std::size_t nx, std::size_t nz, double dx, double dz);

/// FFT-ordered wave numbers 2*pi*m/(n*d), m in [-n/2, n/2).
std::vector<double> fft_wavenumbers(std::size_t n, double d);

}  // namespace fwion
