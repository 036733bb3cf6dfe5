#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "psmc/model.hpp"

namespace psmc {

/// Commutation-function variant of a channel.
enum class WeightKind { Classical = 0, Singlet = 1, Pair = 2 };
/// Symmetrization variant: identity only, or bosons/fermions with dimers.
enum class SymmetryKind { Distinguishable = 0, Boson = 1, Fermion = 2 };

inline constexpr int kChannels = 9;

inline constexpr int channel_index(WeightKind w, SymmetryKind s) {
  return static_cast<int>(w) * 3 + static_cast<int>(s);
}

std::string weight_kind_name(WeightKind w);      // classical, singlet, pair
std::string symmetry_kind_name(SymmetryKind s);  // dm0, boson, fermion
std::string channel_name(int channel);           // e.g. singlet_boson

/// Per-configuration umbrella weights.  `energy[c]` is the energy-weighted
/// numerator (weight times effective energy, or its momentum integral).
struct WeightSet {
  std::array<std::complex<double>, kChannels> weight{};
  std::array<std::complex<double>, kChannels> energy{};
};

struct HistogramSpec {
  double lo = -1.0;
  double hi = 6.0;
  int n_bins = 140;

  double bin_width() const { return (hi - lo) / n_bins; }
  double center(int bin) const { return lo + (bin + 0.5) * bin_width(); }
  /// Bin index or -1 when outside [lo, hi).
  int bin(double q) const;

  /// Bin width spacing/20 over [-spacing, (N+2) spacing].
  static HistogramSpec for_model(const ModelParams& params, double bins_per_spacing = 20.0);
};

struct ChannelSums {
  double w = 0.0;      // sum Re w
  double w_e = 0.0;    // sum Re (w E)
  double w_im = 0.0;   // sum Im w
  double w_e_im = 0.0; // sum Im (w E)
  double w_abs = 0.0;  // sum |w|
  double out_of_range = 0.0;  // weighted particle count outside the histogram
  std::vector<double> hist;   // weighted particle counts per bin
};

struct BlockSums {
  double count = 0.0;
  double plain_energy = 0.0;  // unweighted classical-channel energy sum
  std::array<ChannelSums, kChannels> channels;
};

/// Block accumulators for all nine channels.  Merging two sets adds block
/// k to block k, which is associative and commutative.
class EstimatorSet {
 public:
  EstimatorSet() = default;
  EstimatorSet(int n_blocks, const HistogramSpec& hist);

  int n_blocks() const { return static_cast<int>(blocks_.size()); }
  const HistogramSpec& histogram() const { return hist_; }
  const BlockSums& block(int k) const { return blocks_[k]; }

  /// Adds one sample.  `plain_energy` is the classical-channel energy
  /// accumulated without weights; `positions` feed the density histogram.
  void add(int block, const WeightSet& w, double plain_energy, std::span<const double> positions);

  void merge(const EstimatorSet& other);

  /// Sum over blocks.
  BlockSums total() const;

 private:
  HistogramSpec hist_;
  std::vector<BlockSums> blocks_;
};

struct ValueError {
  double value = 0.0;
  double error = 0.0;  // twice the jackknife standard error
};

struct ChannelEstimate {
  ValueError energy;
  ValueError denominator;  // Z_channel / Z_(same weight kind, dm0)
  bool near_pole = false;
  ValueError imag_weight;  // mean Im w, error = 2 standard errors
  ValueError imag_energy;  // mean Im (w E)
  double weight_sum = 0.0;
  double abs_weight_sum = 0.0;
  std::vector<double> density;
  std::vector<double> density_error;
};

struct Estimates {
  double samples = 0.0;
  std::array<ChannelEstimate, kChannels> channels;
  std::array<ValueError, 3> boson_minus_fermion;  // per weight kind
  std::array<bool, 3> difference_near_pole{};
  std::array<std::vector<double>, 3> density_difference;  // boson minus fermion, per bin
  std::array<std::vector<double>, 3> density_difference_error;
  double plain_classical_energy = 0.0;
  HistogramSpec histogram;
};

/// Threshold on |sum Re w| / sum |w| below which a channel is near a pole.
inline constexpr double kNearPoleThreshold = 1e-3;

/// Ratio estimates with jackknife errors over blocks.  Blocks with no samples
/// are ignored; at least two populated blocks are required.
Estimates finalize(const EstimatorSet& set);

/// Jackknife estimate of f(sum_a, sum_b) = sum_a / sum_b over blocks.
/// Returns twice the standard error.
ValueError jackknife_ratio(std::span<const double> numerators, std::span<const double> denominators);

/// Mean of per-block values with twice the standard error of the mean.
ValueError block_mean(std::span<const double> values, std::span<const double> counts);

}  // namespace psmc
