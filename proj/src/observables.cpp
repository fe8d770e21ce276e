#include "fwion/observables.hpp"

#include <vector>

namespace fwion {

CenterOfMass center_of_mass(const SpinorWavefunction& psi, const std::optional<Region>& region) {
  const Grid2D& g = psi.grid;
  std::vector<double> sx(g.size()), sz(g.size());
  for (std::size_t j = 0; j < g.nz(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      if (region && !region->contains(g.x(i), g.z(j))) continue;
      const double rho = std::norm(psi.up[k]) + std::norm(psi.down[k]);
      sx[k] = g.x(i) * rho;
      sz[k] = g.z(j) * rho;
    }
  return {pairwise_sum(sx) * g.cell(), pairwise_sum(sz) * g.cell()};
}

double spin_down_population(const SpinorWavefunction& psi) { return field_norm(psi.down, psi.grid); }

Acceleration acceleration(const SpinorWavefunction& psi, const Potential& potential, const TermToggles& toggles,
                          LaplacianOrdering ordering) {
  const Grid2D& g = psi.grid;
  const double c = toggles.c();
  const double corr = 1.5 / (c * c);
  const auto fourier = Fourier::for_grid(g);
  std::vector<double> fx(g.size()), fz(g.size()), lx, lz;
  if (ordering == LaplacianOrdering::on_function) {
    lx.resize(g.size());
    lz.resize(g.size());
  }
  for (std::size_t j = 0; j < g.nz(); ++j)
    for (std::size_t i = 0; i < g.nx(); ++i) {
      const std::size_t k = g.index(i, j);
      const Gradient gr = potential_gradient(potential, g.x(i), g.z(j));
      fx[k] = -gr.x;
      fz[k] = -gr.z;
      if (ordering == LaplacianOrdering::on_function) {
        const Gradient lg = potential_laplacian_gradient(potential, g.x(i), g.z(j));
        lx[k] = -lg.x;
        lz[k] = -lg.z;
      }
    }

  Acceleration a;
  std::vector<Complex> plain_x(g.size()), plain_z(g.size()), cor_x(g.size()), cor_z(g.size());
  for (const Field* comp : {&psi.up, &psi.down}) {
    if (is_zero(*comp)) continue;
    const Field& f = *comp;
    for (std::size_t k = 0; k < g.size(); ++k) {
      plain_x[k] += std::norm(f[k]) * fx[k];
      plain_z[k] += std::norm(f[k]) * fz[k];
    }
    if (ordering == LaplacianOrdering::on_function) {
      for (std::size_t k = 0; k < g.size(); ++k) {
        cor_x[k] += std::norm(f[k]) * lx[k];
        cor_z[k] += std::norm(f[k]) * lz[k];
      }
      continue;
    }
    for (int axis = 0; axis < 2; ++axis) {
      const std::vector<double>& force = axis == 0 ? fx : fz;
      Field w(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) w[k] = force[k] * f[k];
      fourier->forward_2d(w);
      for (std::size_t j = 0; j < g.nz(); ++j)
        for (std::size_t i = 0; i < g.nx(); ++i) w[g.index(i, j)] *= -(g.kx(i) * g.kx(i) + g.kz(j) * g.kz(j));
      fourier->backward_2d(w);
      auto& acc = axis == 0 ? cor_x : cor_z;
      for (std::size_t k = 0; k < g.size(); ++k) acc[k] += std::conj(f[k]) * w[k];
    }
  }
  const double cell = g.cell();
  a.x_plain = pairwise_sum(plain_x).real() * cell;
  a.z_plain = pairwise_sum(plain_z).real() * cell;
  a.x = a.x_plain + corr * pairwise_sum(cor_x).real() * cell;
  a.z = a.z_plain + corr * pairwise_sum(cor_z).real() * cell;
  return a;
}

Parities parities(const Field& f, const Grid2D& g) {
  // Reflection about the origin point: i -> (nx - i) mod nx.
  std::vector<Complex> px(g.size()), pz(g.size()), pi(g.size());
  std::vector<double> nn(g.size());
  const std::size_t nx = g.nx(), nz = g.nz();
  for (std::size_t j = 0; j < nz; ++j)
    for (std::size_t i = 0; i < nx; ++i) {
      const std::size_t k = g.index(i, j);
      const std::size_t ri = (nx - i) % nx, rj = (nz - j) % nz;
      const Complex a = std::conj(f[k]);
      px[k] = a * f[g.index(ri, j)];
      pz[k] = a * f[g.index(i, rj)];
      pi[k] = a * f[g.index(ri, rj)];
      nn[k] = std::norm(f[k]);
    }
  const double n = pairwise_sum(nn);
  if (n == 0.0) return {};
  return {pairwise_sum(px).real() / n, pairwise_sum(pz).real() / n, pairwise_sum(pi).real() / n};
}

}  // namespace fwion
