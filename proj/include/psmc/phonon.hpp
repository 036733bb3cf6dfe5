#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "psmc/model.hpp"

namespace psmc {

/// Normal modes of the harmonic chain with fixed walls.
struct PhononSpectrum {
  int n = 0;
  std::vector<double> stiffness;     // mu_n in m omega_LJ^2, ascending
  std::vector<double> frequencies;   // omega_n in omega_LJ, ascending
  std::vector<double> eigenvectors;  // X[j * n + k], column k is mode k
  double hbar = 1.0;

  double eigenvector(int particle, int mode) const { return eigenvectors[particle * n + mode]; }
};

/// Closed-form phonon modes: mu_k = kappa + 2 lambda (1 - cos(k pi / (N+1))),
/// X_jk = sqrt(2/(N+1)) sin(j k pi / (N+1)).
/// Throws DegenerateModelError when kappa = lambda = 0.
PhononSpectrum normal_modes(const ModelParams& params);

/// Zero-point energy sum_k hbar omega_k / 2.
double ground_state_energy(const PhononSpectrum& spectrum);

/// Canonical energy of independent phonon modes, all levels included.
double exact_energy_closed(const PhononSpectrum& spectrum, double beta);

/// The l_max lowest product-state levels E = sum_k hbar omega_k (n_k + 1/2).
struct TruncatedSpectrum {
  int n_modes = 0;
  std::vector<double> levels;              // ascending
  std::vector<std::uint16_t> occupations;  // levels.size() x n_modes

  std::size_t size() const { return levels.size(); }
  std::span<const std::uint16_t> occupation(std::size_t level) const {
    return {occupations.data() + level * n_modes, static_cast<std::size_t>(n_modes)};
  }
};

class ResourceLimitError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Best-first enumeration over occupation vectors.  Each vector is reached
/// from a unique parent (decrement its highest occupied mode), so the queue
/// never holds duplicates.  Ties in energy are ordered lexicographically by
/// occupation.  Throws ResourceLimitError instead of truncating silently when
/// l_max or the frontier would exceed max_entries.
TruncatedSpectrum enumerate_levels(const PhononSpectrum& spectrum, int l_max,
                                   std::size_t max_entries = 50'000'000);

/// Boltzmann average over the retained levels, factors taken relative to
/// the lowest level.  Throws std::invalid_argument on an empty spectrum.
double truncated_energy(const TruncatedSpectrum& spectrum, double beta);

/// Unsymmetrized equilibrium density: particle j is Gaussian about its
/// lattice site with variance sum_k X_jk^2 (hbar / 2 m omega_k) coth(beta hbar omega_k / 2).
std::vector<double> exact_density_unsymmetrized(const ModelParams& params,
                                                const PhononSpectrum& spectrum, double beta,
                                                std::span<const double> grid);

/// Per-particle position variances used by exact_density_unsymmetrized.
std::vector<double> exact_position_variances(const ModelParams& params,
                                             const PhononSpectrum& spectrum, double beta);

}  // namespace psmc
