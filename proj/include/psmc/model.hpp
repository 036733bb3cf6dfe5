#pragma once

#include <span>
#include <stdexcept>
#include <vector>

#include "psmc/units.hpp"

namespace psmc {

/// Parameters of the one-dimensional harmonic crystal in reduced units.
///
/// N particles sit between two fixed walls at q_0 = 0 and
/// q_{N+1} = (N+1) * lattice_spacing.  Each particle is tied to its lattice
/// site by an on-site spring (kappa) and to its neighbours by springs of
/// strength lambda_nn and relaxed length lattice_spacing.
struct ModelParams {
  int n_particles = 4;
  double lattice_spacing = 1.0;  // r_e
  double kappa = 1.0;            // m omega_LJ^2
  double lambda_nn = 1.0;        // m omega_LJ^2
  double mass = reduced_mass();  // m r_e^2 omega_LJ / hbar
  double omega_lj = 1.0;
  double hbar = 1.0;
  double beta = 1.0;             // beta hbar omega_LJ

  /// On-site spring constant in energy / length^2.
  double onsite_stiffness() const { return kappa * mass * omega_lj * omega_lj; }
  /// Nearest-neighbour spring constant in energy / length^2.
  double coupling_stiffness() const { return lambda_nn * mass * omega_lj * omega_lj; }

  /// Throws std::invalid_argument when an invariant is violated.
  void validate() const;
};

/// Thrown when the model has no restoring force (kappa = lambda = 0).
class DegenerateModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One Monte Carlo state.  Displacements d_j = q_j - j * lattice_spacing are
/// the stored degrees of freedom; the walls are implicit (d_0 = d_{N+1} = 0).
class Configuration {
 public:
  Configuration() = default;
  explicit Configuration(int n_particles) : displacements_(n_particles, 0.0) {}
  explicit Configuration(std::vector<double> displacements)
      : displacements_(std::move(displacements)) {}

  static Configuration from_positions(const ModelParams& params,
                                      std::span<const double> positions);

  int size() const { return static_cast<int>(displacements_.size()); }

  std::span<const double> displacements() const { return displacements_; }
  std::span<double> displacements() { return displacements_; }

  double displacement(int i) const { return displacements_[i]; }
  double& displacement(int i) { return displacements_[i]; }

  /// Displacement with wall convention: index -1 and N return 0.
  double displacement_or_wall(int i) const {
    return (i < 0 || i >= size()) ? 0.0 : displacements_[i];
  }

  /// Absolute position of particle i (0-based), lattice site (i+1) * spacing.
  double position(const ModelParams& params, int i) const {
    return (i + 1) * params.lattice_spacing + displacements_[i];
  }
  std::vector<double> positions(const ModelParams& params) const;

 private:
  std::vector<double> displacements_;
};

/// Total potential energy (kappa/2) sum d_j^2 + (lambda/2) sum (d_{j+1}-d_j)^2.
double potential_energy(const ModelParams& params, const Configuration& config);

/// Energy of particle i (0-based) with the pair springs shared equally and
/// the wall springs assigned wholly to the adjacent particle.  Summing over
/// all particles gives potential_energy.
double particle_energy(const ModelParams& params, const Configuration& config, int i);

/// Change in potential energy when particle i moves by delta; touches only
/// the on-site term and the two adjacent springs.
double potential_energy_change(const ModelParams& params, const Configuration& config,
                               int i, double delta);

/// Kinetic plus potential energy.
double classical_hamiltonian(const ModelParams& params, const Configuration& config,
                             std::span<const double> momenta);

}  // namespace psmc
