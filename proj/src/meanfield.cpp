#include "psmc/meanfield.hpp"

#include <cmath>
#include <stdexcept>

namespace psmc {

double ModeSet::expanded_potential(const ModelParams& params) const {
  const double unit = params.mass * params.omega_lj * params.omega_lj;
  double u = offset;
  for (const auto& m : modes) u += 0.5 * m.curvature * unit * m.coordinate * m.coordinate;
  return u;
}

MeanFieldLayout::MeanFieldLayout(const ModelParams& params, MeanField kind)
    : params_(params), kind_(kind) {
  params_.validate();
  const int n = params_.n_particles;
  const double kappa = params_.kappa;
  const double lambda = params_.lambda_nn;
  auto share = [n](int neighbour) { return (neighbour < 0 || neighbour >= n) ? 1.0 : 0.5; };

  auto add_singlet = [&](int j) {
    const double ls = share(j - 1);
    const double rs = share(j + 1);
    const double c = kappa + lambda * (ls + rs);
    Cluster cl{j, 1, {lambda * ls / c, 0.0}, {lambda * rs / c, 0.0}, ls, rs};
    clusters_.push_back(cl);
    LocalMode m;
    m.first = j;
    m.size = 1;
    m.vector = {1.0, 0.0};
    m.curvature = c;
    m.active = c > 0.0;
    m.omega = m.active ? params_.omega_lj * std::sqrt(c) : 0.0;
    modes_.push_back(m);
  };

  auto add_pair = [&](int i) {
    const double ls = share(i - 1);
    const double rs = share(i + 2);
    // Hessian = -lambda [[K', 1], [1, K'']].
    const double k1 = -(kappa + lambda + lambda * ls) / lambda;
    const double k2 = -(kappa + lambda + lambda * rs) / lambda;
    const double det = k1 * k2 - 1.0;
    const double f = -0.5 / det;
    Cluster cl{i, 2, {f * k2, -f}, {-f, f * k1}, ls, rs};
    clusters_.push_back(cl);
    const double mean = 0.5 * (k1 + k2);
    const double root = 0.5 * std::sqrt((k1 - k2) * (k1 - k2) + 4.0);
    for (double mu : {mean + root, mean - root}) {
      const double a = mu - k1;
      const double c = 1.0 / std::sqrt(1.0 + a * a);
      LocalMode m;
      m.first = i;
      m.size = 2;
      m.vector = {c, c * a};
      m.curvature = -lambda * mu;
      m.active = m.curvature > 0.0;
      m.omega = m.active ? params_.omega_lj * std::sqrt(m.curvature) : 0.0;
      modes_.push_back(m);
    }
  };

  if (kind == MeanField::Singlet || lambda == 0.0) {
    for (int j = 0; j < n; ++j) add_singlet(j);
  } else {
    for (int i = 0; i + 1 < n; i += 2) add_pair(i);
    if (n % 2 == 1) add_singlet(n - 1);
  }
}

double MeanFieldLayout::cluster_energy(const Cluster& c, const Configuration& config,
                                       std::span<const double> x) const {
  const double ks = params_.onsite_stiffness();
  const double ls = params_.coupling_stiffness();
  const double left = config.displacement_or_wall(c.first - 1);
  const double right = config.displacement_or_wall(c.first + c.size);
  double e = 0.0;
  for (int k = 0; k < c.size; ++k) e += 0.5 * ks * x[k] * x[k];
  if (c.size == 2) e += 0.5 * ls * (x[1] - x[0]) * (x[1] - x[0]);
  const double dl = x[0] - left;
  const double dr = right - x[c.size - 1];
  e += 0.5 * ls * (c.left_share * dl * dl + c.right_share * dr * dr);
  return e;
}

void MeanFieldLayout::expand(const Configuration& config, ModeSet& out) const {
  const int n = config.size();
  if (n != params_.n_particles) throw std::invalid_argument("configuration size mismatch");
  out.modes.assign(modes_.begin(), modes_.end());
  out.minimum.resize(n);
  out.cluster_energy.resize(clusters_.size());
  out.offset = 0.0;
  const double scale_unit = params_.mass / params_.hbar;
  for (std::size_t ci = 0; ci < clusters_.size(); ++ci) {
    const Cluster& c = clusters_[ci];
    const double left = config.displacement_or_wall(c.first - 1);
    const double right = config.displacement_or_wall(c.first + c.size);
    std::array<double, 2> xbar{};
    for (int k = 0; k < c.size; ++k) {
      xbar[k] = c.left_coeff[k] * left + c.right_coeff[k] * right;
      out.minimum[c.first + k] = xbar[k];
    }
    out.cluster_energy[ci] = cluster_energy(c, config, std::span<const double>(xbar.data(), c.size));
    out.offset += out.cluster_energy[ci];
  }
  for (auto& m : out.modes) {
    double coord = m.vector[0] * (config.displacement(m.first) - out.minimum[m.first]);
    if (m.size == 2)
      coord += m.vector[1] * (config.displacement(m.first + 1) - out.minimum[m.first + 1]);
    m.coordinate = coord;
    m.amplitude = m.active ? std::sqrt(scale_unit * m.omega) * coord : 0.0;
  }
}

ModeSet MeanFieldLayout::expand(const Configuration& config) const {
  ModeSet out;
  expand(config, out);
  return out;
}

SingletExpansion singlet_expand(const ModelParams& params, const Configuration& config) {
  const MeanFieldLayout layout(params, MeanField::Singlet);
  SingletExpansion s;
  s.mode_set = layout.expand(config);
  const ModeSet& set = s.mode_set;
  s.minimum = set.minimum;
  s.minimum_energy = set.cluster_energy;
  s.offset = set.offset;
  for (const auto& m : set.modes) {
    s.curvature.push_back(m.curvature);
    s.frequency.push_back(m.omega);
    s.amplitude.push_back(m.amplitude);
  }
  return s;
}

PairExpansion pair_expand(const ModelParams& params, const Configuration& config) {
  const MeanFieldLayout layout(params, MeanField::Pair);
  PairExpansion out;
  out.mode_set = layout.expand(config);
  const ModeSet& set = out.mode_set;
  out.offset = set.offset;
  const double kappa = params.kappa;
  const double lambda = params.lambda_nn;
  const int n = config.size();
  auto share = [n](int neighbour) { return (neighbour < 0 || neighbour >= n) ? 1.0 : 0.5; };
  std::size_t cluster = 0;
  for (std::size_t b = 0; b < set.modes.size(); ++cluster) {
    const auto& m = set.modes[b];
    if (m.size == 2) {
      const auto& mm = set.modes[b + 1];
      PairCluster pc;
      pc.first = m.first;
      pc.minimum = {set.minimum[m.first], set.minimum[m.first + 1]};
      pc.k1 = -(kappa + lambda + lambda * share(m.first - 1)) / lambda;
      pc.k2 = -(kappa + lambda + lambda * share(m.first + 2)) / lambda;
      pc.mu_plus = -m.curvature / lambda;
      pc.mu_minus = -mm.curvature / lambda;
      pc.c_plus = m.vector[0];
      pc.c_minus = mm.vector[0];
      pc.a_plus = m.vector[1] / m.vector[0];
      pc.a_minus = mm.vector[1] / mm.vector[0];
      pc.omega_plus = m.omega;
      pc.omega_minus = mm.omega;
      pc.q_plus = m.amplitude;
      pc.q_minus = mm.amplitude;
      pc.minimum_energy = set.cluster_energy[cluster];
      out.pairs.push_back(pc);
      b += 2;
    } else {
      SingletCluster sc;
      sc.particle = m.first;
      sc.minimum = set.minimum[m.first];
      sc.curvature = m.curvature;
      sc.frequency = m.omega;
      sc.amplitude = m.amplitude;
      sc.minimum_energy = set.cluster_energy[cluster];
      out.singlets.push_back(sc);
      b += 1;
    }
  }
  return out;
}

std::vector<double> mode_momenta(const ModelParams& params, const ModeSet& modes,
                                 std::span<const double> momenta) {
  if (static_cast<int>(momenta.size()) != static_cast<int>(modes.minimum.size()))
    throw std::invalid_argument("momenta length does not match particle count");
  std::vector<double> out(modes.modes.size(), 0.0);
  for (std::size_t b = 0; b < modes.modes.size(); ++b) {
    const auto& m = modes.modes[b];
    if (!m.active) continue;
    out[b] = m.project(momenta) / std::sqrt(params.mass * params.hbar * m.omega);
  }
  return out;
}

}  // namespace psmc
