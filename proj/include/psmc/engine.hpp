#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "psmc/commutation.hpp"
#include "psmc/estimators.hpp"
#include "psmc/meanfield.hpp"
#include "psmc/model.hpp"
#include "psmc/symmetrization.hpp"

namespace psmc {

/// How the momentum integral of the weight is done.  `Analytic` integrates
/// every mode factor against the Maxwell-Boltzmann Gaussian in closed form;
/// `Sampled` draws momenta and evaluates the complex weight directly.
enum class MomentumMode { Analytic, Sampled };

struct EngineOptions {
  CommutationOptions commutation;
  int dm_cap = 2;
  MomentumMode momentum = MomentumMode::Analytic;
  long sweeps = 200000;                 // production + equilibration
  double equilibration_fraction = 0.1;
  int blocks = 20;
  int chains = 1;
  std::uint64_t seed = 1;
  int measure_every = 1;                // sweeps between measurements
  double bins_per_spacing = 20.0;
  double initial_step = 0.0;            // <= 0: thermal width of the stiffest spring

  void validate() const;
};

/// Largest N the per-configuration evaluators handle.
inline constexpr int kMaxParticles = 64;

/// Nine-channel weight evaluator for one parameter set.
class WeightEvaluator {
 public:
  WeightEvaluator(const ModelParams& params, const EngineOptions& options);

  const ModelParams& params() const { return params_; }

  /// Momentum-integrated weights.
  WeightSet evaluate(const Configuration& config);
  /// Weights at the given particle momenta.
  WeightSet evaluate(const Configuration& config, std::span<const double> momenta);

  /// Unweighted classical-channel energy of the last evaluation.
  double last_plain_energy() const { return plain_energy_; }

 private:
  void fill_classical_analytic(const Configuration& config, double u, WeightSet& out) const;
  void fill_meanfield_analytic(const Configuration& config, WeightKind kind, WeightSet& out);
  void symmetrize(WeightKind kind, std::span<const std::complex<double>> w,
                  std::span<const std::complex<double>> e, WeightSet& out) const;

  ModelParams params_;
  EngineOptions options_;
  PermutationSet perms_;
  MeanFieldLayout singlet_;
  MeanFieldLayout pair_;
  ModeSet scratch_;
  std::vector<ModeKernel> identity_kernels_;
  std::vector<double> positions_;
  std::vector<double> exchange_;
  double plain_energy_ = 0.0;
};

struct ChainState {
  Configuration config;
  double potential = 0.0;
  std::mt19937_64 rng;
  double step = 0.1;
  long accepted = 0;
  long attempted = 0;
};

/// Chain started at the lattice with an RNG seeded from (seed, chain).
ChainState make_chain(const ModelParams& params, const EngineOptions& options, int chain);

/// N single-particle trial moves with uniform displacements in (-step, step),
/// accepted with probability min(1, exp(-beta dU)).  Returns moves accepted.
int metropolis_sweep(ChainState& state, const ModelParams& params);

/// Rescales the step toward a 0.5 acceptance using counts since the last call
/// and resets the counters.
void tune_step(ChainState& state);

struct ChainResult {
  EstimatorSet estimators;
  double acceptance = 0.0;   // production acceptance ratio
  double step = 0.0;
  double max_potential_drift = 0.0;
};

ChainResult run_chain(const ModelParams& params, const EngineOptions& options, int chain);

struct RunResult {
  EstimatorSet estimators;
  Estimates estimates;
  std::vector<ChainResult> chains;  // estimators cleared
};

/// Runs options.chains independent chains on separate threads and merges
/// them in chain order.
RunResult run_chains(const ModelParams& params, const EngineOptions& options);

}  // namespace psmc
