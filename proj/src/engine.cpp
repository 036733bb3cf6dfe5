#include "psmc/engine.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace psmc {

void EngineOptions::validate() const {
  if (commutation.n_max < 1) throw std::invalid_argument("n_max must be >= 1");
  if (!(commutation.q_cut >= 0.0)) throw std::invalid_argument("q_cut must be >= 0");
  if (dm_cap != 0 && dm_cap != 2) throw std::invalid_argument("dm_cap must be 0 or 2");
  if (blocks < 2) throw std::invalid_argument("blocks must be >= 2");
  if (chains < 1) throw std::invalid_argument("chains must be >= 1");
  if (measure_every < 1) throw std::invalid_argument("measure_every must be >= 1");
  if (!(equilibration_fraction >= 0.0 && equilibration_fraction < 1.0))
    throw std::invalid_argument("equilibration_fraction must be in [0, 1)");
  const long production = sweeps - static_cast<long>(equilibration_fraction * sweeps);
  if (production / measure_every < blocks)
    throw std::invalid_argument("too few production sweeps for the number of blocks");
  if (!(bins_per_spacing > 0.0)) throw std::invalid_argument("bins_per_spacing must be > 0");
}

WeightEvaluator::WeightEvaluator(const ModelParams& params, const EngineOptions& options)
    : params_(params),
      options_(options),
      perms_(enumerate_permutations(params.n_particles, options.dm_cap)),
      singlet_(params, MeanField::Singlet),
      pair_(params, MeanField::Pair),
      identity_kernels_(params.n_particles),
      positions_(params.n_particles),
      exchange_(params.n_particles, 0.0) {
  if (params.n_particles > kMaxParticles)
    throw std::invalid_argument("at most " + std::to_string(kMaxParticles) + " particles");
}

void WeightEvaluator::symmetrize(WeightKind kind, std::span<const std::complex<double>> w,
                                 std::span<const std::complex<double>> e,
                                 WeightSet& out) const {
  // w[0], e[0] belong to the identity; the rest are odd transpositions.
  std::complex<double> sw = 0.0, se = 0.0;
  for (std::size_t k = 1; k < w.size(); ++k) {
    sw += w[k];
    se += e[k];
  }
  const int c0 = channel_index(kind, SymmetryKind::Distinguishable);
  out.weight[c0] = w[0];
  out.energy[c0] = e[0];
  out.weight[c0 + 1] = w[0] + sw;
  out.energy[c0 + 1] = e[0] + se;
  out.weight[c0 + 2] = w[0] - sw;
  out.energy[c0 + 2] = e[0] - se;
}

void WeightEvaluator::fill_classical_analytic(const Configuration& config, double u,
                                              WeightSet& out) const {
  const int n = params_.n_particles;
  const double hb2 = params_.hbar * params_.hbar;
  const double e_id = u + n / (2.0 * params_.beta);
  std::complex<double> w[kMaxParticles], e[kMaxParticles];
  const std::size_t np = perms_.permutations.size();
  w[0] = 1.0;
  e[0] = e_id;
  for (std::size_t k = 1; k < np; ++k) {
    const int j = k - 1;  // transposition (j, j+1)
    const double x = config.position(params_, j + 1) - config.position(params_, j);
    const double x2 = params_.mass * x * x / (params_.beta * hb2);
    const double f = std::exp(-x2);
    w[k] = f;
    e[k] = f * (e_id - x2 / params_.beta);
  }
  symmetrize(WeightKind::Classical, {w, np}, {e, np}, out);
}

void WeightEvaluator::fill_meanfield_analytic(const Configuration& config, WeightKind kind,
                                              WeightSet& out) {
  const MeanFieldLayout& layout = kind == WeightKind::Singlet ? singlet_ : pair_;
  layout.expand(config, scratch_);
  const auto& modes = scratch_.modes;
  const int nm = static_cast<int>(modes.size());
  const double unit = params_.mass * params_.omega_lj * params_.omega_lj;
  const auto& opt = options_.commutation;

  auto inside = [&](const LocalMode& m) {
    return m.active && std::abs(m.amplitude) <= opt.q_cut;
  };
  auto potential = [&](const LocalMode& m) {
    return 0.5 * m.curvature * unit * m.coordinate * m.coordinate;
  };

  for (int b = 0; b < nm; ++b) {
    const auto& m = modes[b];
    identity_kernels_[b] =
        inside(m) ? integrated_mode_kernel(m.amplitude, m.amplitude,
                                           params_.beta * params_.hbar * m.omega,
                                           params_.hbar * m.omega, opt.n_max)
                  : classical_mode_kernel(params_, potential(m), 0.0);
  }

  std::complex<double> w[kMaxParticles], e[kMaxParticles];
  const std::size_t np = perms_.permutations.size();
  for (std::size_t k = 0; k < np; ++k) {
    if (k > 0) {
      const int j = k - 1;
      const double x = config.position(params_, j + 1) - config.position(params_, j);
      exchange_[j] = x;
      exchange_[j + 1] = -x;
    }
    double W = 1.0, WE = 0.0;
    for (int b = 0; b < nm; ++b) {
      const auto& m = modes[b];
      ModeKernel kern = identity_kernels_[b];
      if (k > 0) {
        const double ex = m.project(exchange_);
        if (ex != 0.0) {
          if (inside(m)) {
            const double shifted =
                m.amplitude + std::sqrt(params_.mass * m.omega / params_.hbar) * ex;
            kern = integrated_mode_kernel(m.amplitude, shifted,
                                          params_.beta * params_.hbar * m.omega,
                                          params_.hbar * m.omega, opt.n_max);
          } else {
            kern = classical_mode_kernel(params_, potential(m), ex);
          }
        }
      }
      WE = WE * kern.weight + W * kern.energy;
      W *= kern.weight;
    }
    w[k] = W;
    e[k] = WE + scratch_.offset * W;
    if (k > 0) {
      exchange_[k - 1] = 0.0;
      exchange_[k] = 0.0;
    }
  }
  symmetrize(kind, {w, np}, {e, np}, out);
}

namespace {

[[noreturn]] void rethrow_with_config(const std::overflow_error& err, const Configuration& c) {
  std::ostringstream os;
  os << err.what() << " at displacements (";
  for (int j = 0; j < c.size(); ++j) os << (j ? ", " : "") << c.displacement(j);
  os << ")";
  throw std::overflow_error(os.str());
}

}  // namespace

WeightSet WeightEvaluator::evaluate(const Configuration& config) {
  WeightSet out;
  const double u = potential_energy(params_, config);
  try {
    fill_classical_analytic(config, u, out);
    fill_meanfield_analytic(config, WeightKind::Singlet, out);
    fill_meanfield_analytic(config, WeightKind::Pair, out);
  } catch (const std::overflow_error& err) {
    rethrow_with_config(err, config);
  }
  plain_energy_ = u + params_.n_particles / (2.0 * params_.beta);
  return out;
}

WeightSet WeightEvaluator::evaluate(const Configuration& config,
                                    std::span<const double> momenta) {
  if (static_cast<int>(momenta.size()) != params_.n_particles)
    throw std::invalid_argument("momentum count does not match N");
  WeightSet out;
  const double h = classical_hamiltonian(params_, config, momenta);
  const std::size_t np = perms_.permutations.size();
  std::complex<double> eta[kMaxParticles];
  for (std::size_t k = 0; k < np; ++k)
    eta[k] = eta_permutation_factor(params_, config, momenta, perms_.permutations[k],
                                    Statistics::Boson);  // unsigned; symmetrize() adds the sign

  std::complex<double> w[kMaxParticles], e[kMaxParticles];
  auto fill = [&](WeightKind kind, std::complex<double> mf) {
    for (std::size_t k = 0; k < np; ++k) {
      w[k] = mf * eta[k];
      e[k] = w[k] * h;
    }
    symmetrize(kind, {w, np}, {e, np}, out);
  };
  try {
    fill(WeightKind::Classical, 1.0);
    for (WeightKind kind : {WeightKind::Singlet, WeightKind::Pair}) {
      const MeanFieldLayout& layout = kind == WeightKind::Singlet ? singlet_ : pair_;
      layout.expand(config, scratch_);
      const auto P = mode_momenta(params_, scratch_, momenta);
      std::vector<double> Q(scratch_.modes.size());
      for (std::size_t b = 0; b < Q.size(); ++b) Q[b] = scratch_.modes[b].amplitude;
      fill(kind, w_mf_config(params_, scratch_, P, Q, options_.commutation));
    }
  } catch (const std::overflow_error& err) {
    rethrow_with_config(err, config);
  }
  plain_energy_ = h;
  return out;
}

ChainState make_chain(const ModelParams& params, const EngineOptions& options, int chain) {
  ChainState s;
  s.config = Configuration(params.n_particles);
  s.potential = 0.0;
  std::seed_seq seq{static_cast<std::uint64_t>(options.seed), static_cast<std::uint64_t>(chain)};
  s.rng.seed(seq);
  if (options.initial_step > 0.0) {
    s.step = options.initial_step;
  } else {
    const double k = params.onsite_stiffness() + 2.0 * params.coupling_stiffness();
    s.step = 1.0 / std::sqrt(params.beta * k);
  }
  return s;
}

int metropolis_sweep(ChainState& state, const ModelParams& params) {
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  int acc = 0;
  for (int j = 0; j < state.config.size(); ++j) {
    const double delta = state.step * uni(state.rng);
    const double du = potential_energy_change(params, state.config, j, delta);
    ++state.attempted;
    if (du <= 0.0 || u01(state.rng) < std::exp(-params.beta * du)) {
      state.config.displacement(j) += delta;
      state.potential += du;
      ++state.accepted;
      ++acc;
    }
  }
  return acc;
}

void tune_step(ChainState& state) {
  if (state.attempted == 0) return;
  const double ratio = static_cast<double>(state.accepted) / state.attempted;
  state.step *= std::clamp(ratio / 0.5, 0.5, 2.0);
  state.accepted = 0;
  state.attempted = 0;
}

ChainResult run_chain(const ModelParams& params, const EngineOptions& options, int chain) {
  params.validate();
  options.validate();
  ChainState state = make_chain(params, options, chain);
  WeightEvaluator eval(params, options);
  ChainResult res;
  res.estimators = EstimatorSet(options.blocks,
                                HistogramSpec::for_model(params, options.bins_per_spacing));

  const long equil = static_cast<long>(options.equilibration_fraction * options.sweeps);
  const long production = options.sweeps - equil;
  constexpr long kTuneInterval = 100;
  constexpr long kResync = 1000;

  auto resync = [&]() {
    const double exact = potential_energy(params, state.config);
    res.max_potential_drift = std::max(res.max_potential_drift, std::abs(exact - state.potential));
    state.potential = exact;
  };

  for (long s = 1; s <= equil; ++s) {
    metropolis_sweep(state, params);
    if (s % kTuneInterval == 0) tune_step(state);
    if (s % kResync == 0) resync();
  }
  state.accepted = 0;
  state.attempted = 0;

  std::normal_distribution<double> gauss(0.0, std::sqrt(params.mass / params.beta));
  std::vector<double> momenta(params.n_particles);
  std::vector<double> positions(params.n_particles);
  const long n_meas = production / options.measure_every;
  long meas = 0;
  for (long s = 1; s <= production; ++s) {
    metropolis_sweep(state, params);
    if (s % kResync == 0) resync();
    if (s % options.measure_every != 0 || meas >= n_meas) continue;
    const int block = static_cast<int>(meas * options.blocks / n_meas);
    WeightSet w;
    if (options.momentum == MomentumMode::Analytic) {
      w = eval.evaluate(state.config);
    } else {
      for (auto& p : momenta) p = gauss(state.rng);
      w = eval.evaluate(state.config, momenta);
    }
    for (int j = 0; j < params.n_particles; ++j)
      positions[j] = state.config.position(params, j);
    res.estimators.add(block, w, eval.last_plain_energy(), positions);
    ++meas;
  }
  resync();
  res.acceptance =
      state.attempted ? static_cast<double>(state.accepted) / state.attempted : 0.0;
  res.step = state.step;
  return res;
}

RunResult run_chains(const ModelParams& params, const EngineOptions& options) {
  params.validate();
  options.validate();
  std::vector<ChainResult> results(options.chains);
  std::vector<std::exception_ptr> errors(options.chains);
  std::vector<std::thread> threads;
  for (int c = 0; c < options.chains; ++c) {
    threads.emplace_back([&, c]() {
      try {
        results[c] = run_chain(params, options, c);
      } catch (...) {
        errors[c] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);

  RunResult out;
  for (auto& r : results) {
    out.estimators.merge(r.estimators);
    r.estimators = EstimatorSet();
  }
  out.estimates = finalize(out.estimators);
  out.chains = std::move(results);
  return out;
}

}  // namespace psmc
