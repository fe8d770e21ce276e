#pragma once

#include <string>
#include <variant>

namespace fwion {

struct Gradient {
  double x = 0.0;
  double z = 0.0;
};

/// V(x,z) = -k / sqrt(q_e + x^2 + z^2). Z is the nominal charge state and is
/// only carried as metadata.
struct SoftCorePotential {
  double k = 1.0;
  double q_e = 1.0;
  int Z = 1;

  double value(double x, double z) const;
  Gradient gradient(double x, double z) const;
  /// d2V/dx2 + d2V/dz2
  double laplacian(double x, double z) const;
  /// (1/r) dV/dr; finite at the origin.
  double radial_over_r(double x, double z) const;
  /// Laplacian of the gradient, (d2/dx2 + d2/dz2) grad V.
  Gradient laplacian_gradient(double x, double z) const;
};

/// V = omega^2 r^2 / 2; used for analytic checks of the solvers.
struct HarmonicPotential {
  double omega = 1.0;

  double value(double x, double z) const { return 0.5 * omega * omega * (x * x + z * z); }
  Gradient gradient(double x, double z) const { return {omega * omega * x, omega * omega * z}; }
  double laplacian(double, double) const { return 2.0 * omega * omega; }
  double radial_over_r(double, double) const { return omega * omega; }
  Gradient laplacian_gradient(double, double) const { return {}; }
};

struct FreeSpace {
  double value(double, double) const { return 0.0; }
  Gradient gradient(double, double) const { return {}; }
  double laplacian(double, double) const { return 0.0; }
  double radial_over_r(double, double) const { return 0.0; }
  Gradient laplacian_gradient(double, double) const { return {}; }
};

using Potential = std::variant<SoftCorePotential, HarmonicPotential, FreeSpace>;

/// Throws ConfigError unless k > 0 and q_e > 0.
SoftCorePotential make_soft_core(double k, double q_e, int Z);

double potential_value(const Potential& p, double x, double z);
Gradient potential_gradient(const Potential& p, double x, double z);
double potential_laplacian(const Potential& p, double x, double z);
Gradient potential_laplacian_gradient(const Potential& p, double x, double z);

/// Spin-orbit prefactor f(x,z) = -(1/4c^2) (1/r) dV/dr; for the soft core
/// this is -k (q_e + r^2)^(-3/2) / (4 c^2).
double so_prefactor(const Potential& p, double x, double z, double c);

std::string describe(const Potential& p);

}  // namespace fwion
