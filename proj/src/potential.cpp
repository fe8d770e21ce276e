#include "fwion/potential.hpp"

#include <cmath>
#include <sstream>

#include "fwion/types.hpp"

namespace fwion {

double SoftCorePotential::value(double x, double z) const {
  return -k / std::sqrt(q_e + x * x + z * z);
}

Gradient SoftCorePotential::gradient(double x, double z) const {
  const double s = q_e + x * x + z * z;
  const double g = k / (s * std::sqrt(s));
  return {g * x, g * z};
}

double SoftCorePotential::laplacian(double x, double z) const {
  const double r2 = x * x + z * z;
  const double s = q_e + r2;
  return k * (2.0 * q_e - r2) / (s * s * std::sqrt(s));
}

Gradient SoftCorePotential::laplacian_gradient(double x, double z) const {
  const double s = q_e + x * x + z * z;
  const double g = -k * (12.0 * q_e - 3.0 * (x * x + z * z)) / (s * s * s * std::sqrt(s));
  return {g * x, g * z};
}

double SoftCorePotential::radial_over_r(double x, double z) const {
  const double s = q_e + x * x + z * z;
  return k / (s * std::sqrt(s));
}

SoftCorePotential make_soft_core(double k, double q_e, int Z) {
  if (!(k > 0.0)) throw ConfigError("soft-core coupling k must be positive");
  if (!(q_e > 0.0)) throw ConfigError("soft-core parameter q_e must be positive");
  return {k, q_e, Z};
}

double potential_value(const Potential& p, double x, double z) {
  return std::visit([&](const auto& v) { return v.value(x, z); }, p);
}

Gradient potential_gradient(const Potential& p, double x, double z) {
  return std::visit([&](const auto& v) { return v.gradient(x, z); }, p);
}

Gradient potential_laplacian_gradient(const Potential& p, double x, double z) {
  return std::visit([&](const auto& v) { return v.laplacian_gradient(x, z); }, p);
}

double potential_laplacian(const Potential& p, double x, double z) {
  return std::visit([&](const auto& v) { return v.laplacian(x, z); }, p);
}

double so_prefactor(const Potential& p, double x, double z, double c) {
  const double g = std::visit([&](const auto& v) { return v.radial_over_r(x, z); }, p);
  return -g / (4.0 * c * c);
}

std::string describe(const Potential& p) {
  std::ostringstream os;
  os.precision(17);
  std::visit(
      [&](const auto& v) {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, SoftCorePotential>)
          os << "softcore(k=" << v.k << ",q_e=" << v.q_e << ",Z=" << v.Z << ")";
        else if constexpr (std::is_same_v<T, HarmonicPotential>)
          os << "harmonic(omega=" << v.omega << ")";
        else
          os << "free";
      },
      p);
  return os.str();
}

}  // namespace fwion
