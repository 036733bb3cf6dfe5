#include "psmc/phonon.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <queue>

namespace psmc {

PhononSpectrum normal_modes(const ModelParams& params) {
  params.validate();
  const int n = params.n_particles;
  PhononSpectrum s;
  s.n = n;
  s.hbar = params.hbar;
  s.stiffness.resize(n);
  s.frequencies.resize(n);
  s.eigenvectors.resize(static_cast<std::size_t>(n) * n);
  const double theta = std::numbers::pi / (n + 1);
  const double norm = std::sqrt(2.0 / (n + 1));
  for (int k = 0; k < n; ++k) {
    const double mu = params.kappa + 2.0 * params.lambda_nn * (1.0 - std::cos((k + 1) * theta));
    s.stiffness[k] = mu;
    s.frequencies[k] = params.omega_lj * std::sqrt(mu);
    for (int j = 0; j < n; ++j)
      s.eigenvectors[j * n + k] = norm * std::sin((j + 1) * (k + 1) * theta);
  }
  return s;
}

double ground_state_energy(const PhononSpectrum& spectrum) {
  double e = 0.0;
  for (double w : spectrum.frequencies) e += 0.5 * spectrum.hbar * w;
  return e;
}

double exact_energy_closed(const PhononSpectrum& spectrum, double beta) {
  double e = 0.0;
  for (double w : spectrum.frequencies) {
    const double hw = spectrum.hbar * w;
    e += hw * (0.5 + 1.0 / std::expm1(beta * hw));
  }
  return e;
}

namespace {

struct Node {
  double energy;
  std::uint32_t slot;  // into the occupation arena
  int last;            // highest mode with nonzero occupation
};

}  // namespace

TruncatedSpectrum enumerate_levels(const PhononSpectrum& spectrum, int l_max,
                                   std::size_t max_entries) {
  if (l_max < 1) throw std::invalid_argument("l_max must be >= 1");
  if (static_cast<std::size_t>(l_max) > max_entries)
    throw ResourceLimitError("l_max exceeds the enumeration resource cap");
  const int n = spectrum.n;
  std::vector<double> quanta(n);
  for (int k = 0; k < n; ++k) quanta[k] = spectrum.hbar * spectrum.frequencies[k];

  std::vector<std::uint16_t> arena(n, 0);
  auto occ = [&](std::uint32_t slot) { return arena.data() + static_cast<std::size_t>(slot) * n; };

  auto greater = [&](const Node& a, const Node& b) {
    if (a.energy != b.energy) return a.energy > b.energy;
    return std::lexicographical_compare(occ(b.slot), occ(b.slot) + n, occ(a.slot),
                                        occ(a.slot) + n);
  };
  std::priority_queue<Node, std::vector<Node>, decltype(greater)> frontier(greater);
  frontier.push({ground_state_energy(spectrum), 0, 0});

  TruncatedSpectrum out;
  out.n_modes = n;
  out.levels.reserve(l_max);
  out.occupations.reserve(static_cast<std::size_t>(l_max) * n);

  while (static_cast<int>(out.levels.size()) < l_max) {
    const Node top = frontier.top();
    frontier.pop();
    out.levels.push_back(top.energy);
    const std::uint16_t* o = occ(top.slot);
    out.occupations.insert(out.occupations.end(), o, o + n);
    for (int k = top.last; k < n; ++k) {
      if (frontier.size() + out.levels.size() >= max_entries)
        throw ResourceLimitError("level enumeration frontier exceeded the resource cap");
      const auto slot = static_cast<std::uint32_t>(arena.size() / n);
      arena.insert(arena.end(), occ(top.slot), occ(top.slot) + n);
      std::uint16_t* child = occ(slot);
      if (child[k] == UINT16_MAX) throw ResourceLimitError("occupation overflow");
      ++child[k];
      frontier.push({top.energy + quanta[k], slot, k});
    }
  }
  return out;
}

double truncated_energy(const TruncatedSpectrum& spectrum, double beta) {
  if (spectrum.levels.empty()) throw std::invalid_argument("empty spectrum");
  const double e0 = spectrum.levels.front();
  double z = 0.0;
  double ez = 0.0;
  for (double e : spectrum.levels) {
    const double w = std::exp(-beta * (e - e0));
    z += w;
    ez += e * w;
  }
  return ez / z;
}

std::vector<double> exact_position_variances(const ModelParams& params,
                                             const PhononSpectrum& spectrum, double beta) {
  const int n = spectrum.n;
  std::vector<double> var(n, 0.0);
  for (int k = 0; k < n; ++k) {
    const double w = spectrum.frequencies[k];
    const double hw = spectrum.hbar * w;
    const double mode_var = spectrum.hbar / (2.0 * params.mass * w) / std::tanh(0.5 * beta * hw);
    for (int j = 0; j < n; ++j) {
      const double x = spectrum.eigenvector(j, k);
      var[j] += x * x * mode_var;
    }
  }
  return var;
}

std::vector<double> exact_density_unsymmetrized(const ModelParams& params,
                                                const PhononSpectrum& spectrum, double beta,
                                                std::span<const double> grid) {
  const auto var = exact_position_variances(params, spectrum, beta);
  std::vector<double> rho(grid.size(), 0.0);
  for (int j = 0; j < spectrum.n; ++j) {
    const double mean = (j + 1) * params.lattice_spacing;
    const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi * var[j]);
    for (std::size_t g = 0; g < grid.size(); ++g) {
      const double x = grid[g] - mean;
      rho[g] += norm * std::exp(-0.5 * x * x / var[j]);
    }
  }
  return rho;
}

}  // namespace psmc
