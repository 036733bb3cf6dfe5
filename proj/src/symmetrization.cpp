#include "psmc/symmetrization.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace psmc {

namespace {

void check_permutation(std::span<const int> image) {
  std::vector<char> seen(image.size(), 0);
  for (int v : image) {
    if (v < 0 || v >= static_cast<int>(image.size()) || seen[v])
      throw std::invalid_argument("not a permutation");
    seen[v] = 1;
  }
}

}  // namespace

bool Permutation::is_identity() const {
  for (int j = 0; j < size(); ++j)
    if (image[j] != j) return false;
  return true;
}

int permutation_length(std::span<const int> image) {
  check_permutation(image);
  int len = 0;
  for (int j = 0; j < static_cast<int>(image.size()); ++j) len += std::abs(j - image[j]);
  return len;
}

std::vector<std::vector<int>> permutation_loops(std::span<const int> image) {
  check_permutation(image);
  std::vector<char> done(image.size(), 0);
  std::vector<std::vector<int>> loops;
  for (int start = 0; start < static_cast<int>(image.size()); ++start) {
    if (done[start] || image[start] == start) continue;
    std::vector<int> loop;
    for (int j = start; !done[j]; j = image[j]) {
      done[j] = 1;
      loop.push_back(j);
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

int permutation_parity(std::span<const int> image) {
  int parity = 0;
  for (const auto& loop : permutation_loops(image)) parity ^= (loop.size() - 1) & 1;
  return parity;
}

PermutationSet enumerate_permutations(int n, int length_cap) {
  if (n < 1) throw std::invalid_argument("N must be >= 1");
  if (length_cap != 0 && length_cap != 2)
    throw std::invalid_argument("unsupported permutation length cap " +
                                std::to_string(length_cap) + " (supported: 0, 2)");
  PermutationSet set;
  set.n = n;
  set.length_cap = length_cap;
  Permutation id;
  id.image.resize(n);
  std::iota(id.image.begin(), id.image.end(), 0);
  set.permutations.push_back(id);
  if (length_cap >= 2) {
    for (int j = 0; j + 1 < n; ++j) {
      Permutation t = id;
      std::swap(t.image[j], t.image[j + 1]);
      t.parity = 1;
      set.permutations.push_back(std::move(t));
    }
  }
  return set;
}

PermutationSet enumerate_permutations_exhaustive(int n, int length_cap) {
  if (n < 1 || n > 10) throw std::invalid_argument("exhaustive enumeration needs 1 <= N <= 10");
  PermutationSet set;
  set.n = n;
  set.length_cap = length_cap;
  std::vector<int> image(n);
  std::iota(image.begin(), image.end(), 0);
  do {
    if (permutation_length(image) <= length_cap)
      set.permutations.push_back({image, permutation_parity(image)});
  } while (std::next_permutation(image.begin(), image.end()));
  return set;
}

long count_permutations_formula(int n, int length_cap) {
  switch (length_cap) {
    case 0: return 1;
    case 2: return n;
    case 4: return n + static_cast<long>(n - 2) * (n - 3) / 2 + 2L * (n - 2);
    default: throw std::invalid_argument("no closed-form count for this cap");
  }
}

std::complex<double> eta_loop_factor(const ModelParams& params, const Configuration& config,
                                     std::span<const double> momenta, std::span<const int> loop,
                                     Statistics stats) {
  std::vector<int> sorted(loop.begin(), loop.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("loop indices must be distinct");
  const std::size_t l = loop.size();
  double phase = 0.0;
  for (std::size_t k = 0; k < l; ++k) {
    const int j = loop[k];
    const int next = loop[(k + 1) % l];
    phase += momenta[j] * (config.position(params, next) - config.position(params, j));
  }
  const double sign = (l % 2 == 0) ? statistics_sign(stats) : 1.0;
  return sign * std::polar(1.0, -phase / params.hbar);
}

std::complex<double> eta_permutation_factor(const ModelParams& params,
                                            const Configuration& config,
                                            std::span<const double> momenta,
                                            const Permutation& perm, Statistics stats) {
  std::complex<double> f = 1.0;
  for (const auto& loop : permutation_loops(perm.image))
    f *= eta_loop_factor(params, config, momenta, loop, stats);
  return f;
}

std::complex<double> eta_sum(const ModelParams& params, const Configuration& config,
                             std::span<const double> momenta, const PermutationSet& set,
                             Statistics stats) {
  std::complex<double> s = 0.0;
  for (const auto& perm : set.permutations)
    s += eta_permutation_factor(params, config, momenta, perm, stats);
  return s;
}

double eta_dimer_momentum_averaged(const ModelParams& params, const Configuration& config, int i,
                                   int j, Statistics stats) {
  const double q = config.position(params, i) - config.position(params, j);
  return statistics_sign(stats) *
         std::exp(-params.mass * q * q / (params.beta * params.hbar * params.hbar));
}

}  // namespace psmc
