#include "psmc/model.hpp"

#include <cmath>
#include <string>

namespace psmc {

void ModelParams::validate() const {
  if (n_particles < 1) throw std::invalid_argument("n_particles must be >= 1");
  if (!(lattice_spacing > 0.0)) throw std::invalid_argument("lattice_spacing must be > 0");
  if (!(kappa >= 0.0)) throw std::invalid_argument("kappa must be >= 0");
  if (!(lambda_nn >= 0.0)) throw std::invalid_argument("lambda_nn must be >= 0");
  if (kappa == 0.0 && lambda_nn == 0.0)
    throw DegenerateModelError("kappa and lambda_nn are both zero: no restoring force");
  if (!(mass > 0.0) || !(hbar > 0.0) || !(omega_lj > 0.0))
    throw std::invalid_argument("mass, hbar and omega_lj must be > 0");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be > 0");
}

Configuration Configuration::from_positions(const ModelParams& params,
                                            std::span<const double> positions) {
  std::vector<double> d(positions.size());
  for (std::size_t i = 0; i < positions.size(); ++i)
    d[i] = positions[i] - static_cast<double>(i + 1) * params.lattice_spacing;
  return Configuration(std::move(d));
}

std::vector<double> Configuration::positions(const ModelParams& params) const {
  std::vector<double> q(displacements_.size());
  for (int i = 0; i < size(); ++i) q[i] = position(params, i);
  return q;
}

double potential_energy(const ModelParams& params, const Configuration& config) {
  const int n = config.size();
  double onsite = 0.0;
  double springs = 0.0;
  for (int i = 0; i < n; ++i) onsite += config.displacement(i) * config.displacement(i);
  for (int i = -1; i < n; ++i) {
    const double s = config.displacement_or_wall(i + 1) - config.displacement_or_wall(i);
    springs += s * s;
  }
  return 0.5 * params.onsite_stiffness() * onsite + 0.5 * params.coupling_stiffness() * springs;
}

double particle_energy(const ModelParams& params, const Configuration& config, int i) {
  const int n = config.size();
  if (i < 0 || i >= n)
    throw std::out_of_range("particle index " + std::to_string(i) + " out of range");
  const double d = config.displacement(i);
  const double left = d - config.displacement_or_wall(i - 1);
  const double right = d - config.displacement_or_wall(i + 1);
  double e = 0.5 * params.onsite_stiffness() * d * d +
             0.25 * params.coupling_stiffness() * (left * left + right * right);
  const int walls = (i == 0) + (i == n - 1);
  e += 0.25 * params.coupling_stiffness() * d * d * walls;
  return e;
}

double potential_energy_change(const ModelParams& params, const Configuration& config,
                               int i, double delta) {
  const double d = config.displacement(i);
  const double dn = d + delta;
  const double l = config.displacement_or_wall(i - 1);
  const double r = config.displacement_or_wall(i + 1);
  const double onsite = 0.5 * params.onsite_stiffness() * (dn * dn - d * d);
  const double springs = 0.5 * params.coupling_stiffness() *
                         ((dn - l) * (dn - l) - (d - l) * (d - l) +
                          (r - dn) * (r - dn) - (r - d) * (r - d));
  return onsite + springs;
}

double classical_hamiltonian(const ModelParams& params, const Configuration& config,
                             std::span<const double> momenta) {
  if (static_cast<int>(momenta.size()) != config.size())
    throw std::invalid_argument("momenta length does not match particle count");
  double kinetic = 0.0;
  for (double p : momenta) kinetic += p * p;
  return 0.5 * kinetic / params.mass + potential_energy(params, config);
}

}  // namespace psmc
