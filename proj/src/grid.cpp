#include "fwion/grid.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fwion/types.hpp"

namespace fwion {

std::vector<double> fft_wavenumbers(std::size_t n, double d) {
  std::vector<double> k(n);
  const double dk = 2.0 * std::numbers::pi / (static_cast<double>(n) * d);
  const auto half = static_cast<long>(n / 2);
  for (std::size_t i = 0; i < n; ++i) {
    long m = static_cast<long>(i);
    if (m >= static_cast<long>(n) - half) m -= static_cast<long>(n);
    k[i] = dk * static_cast<double>(m);
  }
  return k;
}

double Grid2D::dkx() const { return 2.0 * std::numbers::pi / (static_cast<double>(nx_) * dx_); }
double Grid2D::dkz() const { return 2.0 * std::numbers::pi / (static_cast<double>(nz_) * dz_); }

Grid2D make_grid(std::size_t nx, std::size_t nz, double dx, double dz) {
  if (!(dx > 0.0) || !(dz > 0.0) || !std::isfinite(dx) || !std::isfinite(dz))
    throw ConfigError("grid spacing must be positive");
  if (nx < 8 || nz < 8)
    throw ConfigError("grid needs at least 8 points per axis, got " + std::to_string(nx) + "x" +
                      std::to_string(nz));
  Grid2D g;
  g.nx_ = nx;
  g.nz_ = nz;
  g.dx_ = dx;
  g.dz_ = dz;
  g.x_.resize(nx);
  g.z_.resize(nz);
  for (std::size_t i = 0; i < nx; ++i)
    g.x_[i] = (static_cast<double>(i) - static_cast<double>(nx / 2)) * dx;
  for (std::size_t j = 0; j < nz; ++j)
    g.z_[j] = (static_cast<double>(j) - static_cast<double>(nz / 2)) * dz;
  g.kx_ = fft_wavenumbers(nx, dx);
  g.kz_ = fft_wavenumbers(nz, dz);
  return g;
}

}  // namespace fwion
