#pragma once

#include <array>
#include <span>
#include <vector>

#include "psmc/model.hpp"

namespace psmc {

/// One local harmonic mode of a mean-field cluster.  Clusters hold one or two
/// consecutive particles starting at `first`; `vector` holds the orthonormal
/// eigenvector components over those particles.
struct LocalMode {
  int first = 0;
  int size = 1;
  std::array<double, 2> vector{1.0, 0.0};
  double curvature = 0.0;  // eigenvalue of the cluster Hessian, m omega_LJ^2
  double omega = 0.0;      // omega_LJ; zero when inactive
  bool active = true;      // false when the curvature is not positive
  double coordinate = 0.0; // u . (d - dbar), length units
  double amplitude = 0.0;  // dimensionless Q = sqrt(m omega / hbar) * coordinate

  /// Projection of a per-particle vector (indexed by absolute particle id)
  /// onto this mode.
  double project(std::span<const double> x) const {
    double s = vector[0] * x[first];
    if (size == 2) s += vector[1] * x[first + 1];
    return s;
  }
};

/// N modes for one configuration, in the layout shared by the singlet and
/// pair approximations.
struct ModeSet {
  std::vector<LocalMode> modes;
  std::vector<double> minimum;         // cluster-minimum displacement per particle
  std::vector<double> cluster_energy;  // minimum energy of each cluster, in cluster order
  double offset = 0.0;                 // sum of cluster minimum energies

  /// Quadratic expansion sum_C Ubar_C + sum_b (hbar omega_b / 2) Q_b^2.
  double expanded_potential(const ModelParams& params) const;
};

struct SingletExpansion {
  std::vector<double> minimum;          // dbar_j
  std::vector<double> minimum_energy;   // Ubar_j
  std::vector<double> curvature;        // Ubar''_j in m omega_LJ^2
  std::vector<double> frequency;        // omega_j
  std::vector<double> amplitude;        // Q_j
  double offset = 0.0;                  // sum_j Ubar_j
  ModeSet mode_set;
};

struct PairCluster {
  int first = 0;  // particles first, first + 1
  std::array<double, 2> minimum{};      // (dbar_{2a-1}, dbar_{2a})
  double k1 = 0.0, k2 = 0.0;            // K', K'' (Hessian = -lambda [[K', 1], [1, K'']])
  double mu_plus = 0.0, mu_minus = 0.0;
  double a_plus = 0.0, a_minus = 0.0;
  double c_plus = 0.0, c_minus = 0.0;
  double omega_plus = 0.0, omega_minus = 0.0;
  double q_plus = 0.0, q_minus = 0.0;
  double minimum_energy = 0.0;
};

struct SingletCluster {
  int particle = 0;
  double minimum = 0.0;
  double curvature = 0.0;
  double frequency = 0.0;
  double amplitude = 0.0;
  double minimum_energy = 0.0;
};

/// Pair clusters {2a-1, 2a}.  With odd N the last particle is a singlet
/// cluster; with lambda = 0 every particle is a singlet cluster.
struct PairExpansion {
  std::vector<PairCluster> pairs;
  std::vector<SingletCluster> singlets;
  double offset = 0.0;
  ModeSet mode_set;  // pair modes ordered (+, -) per cluster
};

SingletExpansion singlet_expand(const ModelParams& params, const Configuration& config);
PairExpansion pair_expand(const ModelParams& params, const Configuration& config);

enum class MeanField { Singlet, Pair };

/// Configuration-independent part of an expansion (cluster partition,
/// curvatures, eigenvectors, frequencies).  Built once per parameter set and
/// reused for every configuration.
class MeanFieldLayout {
 public:
  MeanFieldLayout(const ModelParams& params, MeanField kind);

  MeanField kind() const { return kind_; }
  int n_modes() const { return static_cast<int>(modes_.size()); }
  std::span<const LocalMode> modes() const { return modes_; }

  /// Fills `out` with minima, offsets and amplitudes for `config`.
  void expand(const Configuration& config, ModeSet& out) const;
  ModeSet expand(const Configuration& config) const;

 private:
  struct Cluster {
    int first;
    int size;
    // Minimum displacement = left_coeff * d_left + right_coeff * d_right.
    std::array<double, 2> left_coeff;
    std::array<double, 2> right_coeff;
    double left_share;   // 1 for a wall spring, 1/2 for a shared spring
    double right_share;
  };

  double cluster_energy(const Cluster& c, const Configuration& config,
                        std::span<const double> x) const;

  ModelParams params_;
  MeanField kind_;
  std::vector<Cluster> clusters_;
  std::vector<LocalMode> modes_;
};

/// Dimensionless mode momenta P_b = (u_b . p) / sqrt(m hbar omega_b).
/// Inactive modes get P = 0.
std::vector<double> mode_momenta(const ModelParams& params, const ModeSet& modes,
                                 std::span<const double> momenta);

}  // namespace psmc
