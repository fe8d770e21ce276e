#include "fwion/absorber.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace fwion {

namespace {

double strip_factor(double r, double half_width, double width) {
  if (width <= 0.0) return 1.0;
  const double inner = half_width - width;
  if (r <= inner) return 1.0;
  if (r >= half_width) return 0.0;
  const double s = (r - inner) / width;
  if (s >= 1.0) return 0.0;
  return std::pow(std::cos(0.5 * std::numbers::pi * s), MaskFunction::exponent);
}

}  // namespace

MaskFunction MaskFunction::default_for(const Grid2D& g) {
  return {0.1 * static_cast<double>(g.nx()) * g.dx(), 0.1 * static_cast<double>(g.nz()) * g.dz()};
}

double MaskFunction::factor_x(const Grid2D& g, double x) const {
  return strip_factor(std::abs(x), g.half_width_x(), width_x);
}

double MaskFunction::factor_z(const Grid2D& g, double z) const {
  return strip_factor(std::abs(z), g.half_width_z(), width_z);
}

std::vector<double> MaskFunction::table(const Grid2D& g) const {
  std::vector<double> t(g.size());
  for (std::size_t j = 0; j < g.nz(); ++j) {
    const double mz = factor_z(g, g.z(j));
    for (std::size_t i = 0; i < g.nx(); ++i) t[g.index(i, j)] = mz * factor_x(g, g.x(i));
  }
  return t;
}

Absorption apply_absorber(SpinorWavefunction& psi, const std::vector<double>& mask) {
  if (mask.size() != psi.grid.size()) throw std::invalid_argument("mask does not match grid");
  Absorption a;
  a.flux = SpinorWavefunction(psi.grid);
  a.flux.time = psi.time;
  const double before = norm(psi);
  for (std::size_t k = 0; k < mask.size(); ++k) {
    const double m = mask[k];
    a.flux.up[k] = (1.0 - m) * psi.up[k];
    a.flux.down[k] = (1.0 - m) * psi.down[k];
    psi.up[k] *= m;
    psi.down[k] *= m;
  }
  a.removed_probability = before - norm(psi);
  return a;
}

}  // namespace fwion
