#include "psmc/commutation.hpp"

#include <cmath>
#include <numbers>

namespace psmc {

namespace {

constexpr double kMaxExponent = 700.0;

void check_exponent(double e) {
  if (!(e < kMaxExponent))
    throw std::overflow_error("commutation function prefactor overflows (exponent " +
                              std::to_string(e) + ")");
}

}  // namespace

double hermite(int n, double z) {
  if (n < 0) throw std::invalid_argument("negative Hermite order");
  double prev = 1.0;
  if (n == 0) return prev;
  double cur = 2.0 * z;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * z * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

void hermite_scaled(double z, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = std::numbers::sqrt2 * z;
  for (std::size_t n = 1; n + 1 < out.size(); ++n) {
    const double np1 = static_cast<double>(n + 1);
    out[n + 1] = std::sqrt(2.0 / np1) * z * out[n] - std::sqrt(n / np1) * out[n - 1];
  }
}

complex w_sho_series(double P, double Q, double beta_hw, int n_max) {
  if (n_max < 0) throw std::invalid_argument("n_max must be >= 0");
  const double r2 = P * P + Q * Q;
  const double gauss = 0.5 * (beta_hw - 1.0) * r2;
  check_exponent(gauss);
  std::vector<double> hp(n_max + 1), hq(n_max + 1);
  hermite_scaled(P, hp);
  hermite_scaled(Q, hq);
  // i^n cycles through 1, i, -1, -i.
  double re = 0.0, im = 0.0;
  double damp = std::exp(gauss - 0.5 * beta_hw);
  const double ratio = std::exp(-beta_hw);
  for (int n = 0; n <= n_max; ++n) {
    const double t = damp * hp[n] * hq[n];
    switch (n & 3) {
      case 0: re += t; break;
      case 1: im += t; break;
      case 2: re -= t; break;
      default: im -= t; break;
    }
    damp *= ratio;
  }
  return std::numbers::sqrt2 * std::polar(1.0, -P * Q) * complex(re, im);
}

complex w_sho_mehler(double P, double Q, double beta_hw) {
  if (!(beta_hw > 0.0)) throw std::invalid_argument("Mehler form requires beta_hw > 0");
  const double r2 = P * P + Q * Q;
  const double gauss = 0.5 * (beta_hw - 1.0) * r2;
  check_exponent(gauss);
  const complex rho(0.0, std::exp(-beta_hw));
  const complex one_minus = 1.0 - rho * rho;
  const complex kernel = std::exp((2.0 * P * Q * rho - r2 * rho * rho) / one_minus) /
                         std::sqrt(one_minus);
  return std::numbers::sqrt2 * std::polar(1.0, -P * Q) * std::exp(gauss - 0.5 * beta_hw) * kernel;
}

complex w_mf_config(const ModelParams& params, const ModeSet& modes, std::span<const double> P,
                    std::span<const double> Q, const CommutationOptions& options) {
  if (P.size() != modes.modes.size() || Q.size() != modes.modes.size())
    throw std::invalid_argument("mode list lengths differ");
  complex w = 1.0;
  for (std::size_t b = 0; b < modes.modes.size(); ++b) {
    const auto& m = modes.modes[b];
    if (!m.active || std::abs(Q[b]) > options.q_cut) continue;
    w *= w_sho_series(P[b], Q[b], params.beta * params.hbar * m.omega, options.n_max);
  }
  return w;
}

ModeKernel integrated_mode_kernel(double Q, double Q_shifted, double beta_hw, double hbar_omega,
                                  int n_max) {
  constexpr int kStack = 64;
  double hq_stack[kStack], hs_stack[kStack];
  std::vector<double> hq_heap, hs_heap;
  std::span<double> hq, hs;
  if (n_max + 1 <= kStack) {
    hq = std::span<double>(hq_stack, n_max + 1);
    hs = std::span<double>(hs_stack, n_max + 1);
  } else {
    hq_heap.resize(n_max + 1);
    hs_heap.resize(n_max + 1);
    hq = hq_heap;
    hs = hs_heap;
  }
  hermite_scaled(Q, hq);
  if (Q_shifted == Q) {
    std::copy(hq.begin(), hq.end(), hs.begin());
  } else {
    hermite_scaled(Q_shifted, hs);
  }
  const double q2 = Q * Q;
  const double s2 = Q_shifted * Q_shifted;
  const double expo = 0.5 * beta_hw * q2 - 0.5 * (q2 + s2) - 0.5 * beta_hw;
  check_exponent(expo);
  double damp = std::sqrt(2.0 * beta_hw) * std::exp(expo);
  const double ratio = std::exp(-beta_hw);
  const double shift = 0.5 * (q2 - s2);
  ModeKernel k{0.0, 0.0};
  for (int n = 0; n <= n_max; ++n) {
    const double t = damp * hq[n] * hs[n];
    k.weight += t;
    k.energy += t * (n + 0.5 + shift);
    damp *= ratio;
  }
  k.energy *= hbar_omega;
  return k;
}

ModeKernel classical_mode_kernel(const ModelParams& params, double potential, double exchange) {
  const double x2 = params.mass * exchange * exchange / (params.beta * params.hbar * params.hbar);
  const double w = std::exp(-0.5 * x2);
  return {w, w * (potential + 0.5 / params.beta * (1.0 - x2))};
}

}  // namespace psmc
