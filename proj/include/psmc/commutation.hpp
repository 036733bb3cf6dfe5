#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

#include "psmc/meanfield.hpp"
#include "psmc/model.hpp"

namespace psmc {

using complex = std::complex<double>;

/// Physicists' Hermite polynomial H_n(z) by the three-term recurrence.
double hermite(int n, double z);

/// h_k(z) = H_k(z) / sqrt(2^k k!) for k = 0..out.size()-1.  The scaling is
/// folded into the recurrence so large orders do not overflow.
void hermite_scaled(double z, std::span<double> out);

struct CommutationOptions {
  int n_max = 8;       // highest Hermite order kept in the series
  double q_cut = 1.0;  // |Q| beyond which a mode's factor is set to one
};

/// Single-mode harmonic-oscillator commutation function from the truncated
/// energy-eigenfunction series:
///   sqrt2 e^{-iPQ} e^{(bhw-1)(P^2+Q^2)/2} sum_n i^n e^{-bhw(n+1/2)} H_n(P) H_n(Q) / (2^n n!)
/// Throws std::overflow_error if the Gaussian prefactor leaves double range.
complex w_sho_series(double P, double Q, double beta_hw, int n_max);

/// Closed form of the infinite series (bilinear Hermite generating function
/// with ratio rho = i e^{-bhw}).  Requires beta_hw > 0.
complex w_sho_mehler(double P, double Q, double beta_hw);

/// Mean-field commutation function: product over modes of w_sho_series,
/// with a factor of one for inactive modes and for |Q| > q_cut.
complex w_mf_config(const ModelParams& params, const ModeSet& modes, std::span<const double> P,
                    std::span<const double> Q, const CommutationOptions& options);

/// A mode factor after the mode momentum has been integrated against the
/// classical Maxwell-Boltzmann weight.  `weight` is the integrated
/// commutation-times-phase factor (normalized so that it is one classically)
/// and `energy` is the same integral with the mode energy
/// (hbar omega / 2)(P^2 + Q^2) inserted.
struct ModeKernel {
  double weight = 1.0;
  double energy = 0.0;
};

/// Momentum-integrated kernel of a quantum mode with amplitude Q whose
/// exchange phase shifts the momentum argument to Q_shifted (Q_shifted = Q
/// for the identity permutation).  Closed form of the truncated series:
///   weight = sqrt(2 bhw) e^{bhw Q^2/2 - (Q^2 + Q'^2)/2} sum_n e^{-bhw(n+1/2)} h_n(Q) h_n(Q')
///   energy = same sum with hbar omega [(n + 1/2) + (Q^2 - Q'^2)/2] inserted.
ModeKernel integrated_mode_kernel(double Q, double Q_shifted, double beta_hw, double hbar_omega,
                                  int n_max);

/// Same integral for a mode with unit commutation function.  `potential` is
/// the mode's potential energy and `exchange` the exchange displacement
/// projected onto the mode (length units).
ModeKernel classical_mode_kernel(const ModelParams& params, double potential, double exchange);

}  // namespace psmc
