#pragma once

#include <complex>
#include <span>
#include <vector>

#include "psmc/model.hpp"

namespace psmc {

enum class Statistics { Boson, Fermion };

inline double statistics_sign(Statistics s) { return s == Statistics::Boson ? 1.0 : -1.0; }

/// A permutation of particle indices 0..N-1: image[j] is where j is sent.
struct Permutation {
  std::vector<int> image;
  int parity = 0;  // 0 even, 1 odd

  int size() const { return static_cast<int>(image.size()); }
  bool is_identity() const;
};

/// Sum over j of |j - image[j]|.  Throws std::invalid_argument if `image`
/// is not a permutation.
int permutation_length(std::span<const int> image);

/// Parity from the cycle decomposition.  Throws on a non-permutation.
int permutation_parity(std::span<const int> image);

/// Cycles of length > 1, each listed as (j, image[j], image[image[j]], ...).
std::vector<std::vector<int>> permutation_loops(std::span<const int> image);

struct PermutationSet {
  int n = 0;
  int length_cap = 0;
  std::vector<Permutation> permutations;  // identity first
};

/// Permutations with length <= cap.  Supported caps are 0 (identity) and 2
/// (identity plus the N-1 nearest-neighbour transpositions).
PermutationSet enumerate_permutations(int n, int length_cap);

/// Exhaustive scan of all N! permutations keeping those with length <= cap.
/// Intended for small N.
PermutationSet enumerate_permutations_exhaustive(int n, int length_cap);

/// Closed-form term counts for caps 0, 2, 4: 1, N, and
/// N + (N-2)(N-3)/2 + 2(N-2).  The cap-4 count covers identity, dimers,
/// double dimers and consecutive trimers; it leaves out the N-2
/// transpositions (j, j+2), which also have length 4.
long count_permutations_formula(int n, int length_cap);

/// Loop factor (+-1)^{l-1} exp(-i sum_k p_k (q_{next(k)} - q_k) / hbar) for the
/// loop visiting `loop` in order.  Throws on repeated indices.
std::complex<double> eta_loop_factor(const ModelParams& params, const Configuration& config,
                                     std::span<const double> momenta, std::span<const int> loop,
                                     Statistics stats);

/// Product of loop factors of one permutation, including its sign.
std::complex<double> eta_permutation_factor(const ModelParams& params,
                                            const Configuration& config,
                                            std::span<const double> momenta,
                                            const Permutation& perm, Statistics stats);

/// Momentum-resolved symmetrization function summed over a permutation set.
std::complex<double> eta_sum(const ModelParams& params, const Configuration& config,
                             std::span<const double> momenta, const PermutationSet& set,
                             Statistics stats);

/// Maxwell-Boltzmann average of a nearest-neighbour dimer factor:
/// +- exp(-m q_ij^2 / (beta hbar^2)).
double eta_dimer_momentum_averaged(const ModelParams& params, const Configuration& config, int i,
                                   int j, Statistics stats);

}  // namespace psmc
