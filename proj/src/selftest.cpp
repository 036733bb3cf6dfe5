#include "psmc/selftest.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "psmc/commutation.hpp"
#include "psmc/engine.hpp"
#include "psmc/meanfield.hpp"
#include "psmc/phonon.hpp"
#include "psmc/symmetrization.hpp"
#include "psmc/units.hpp"

namespace psmc {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

struct Check {
  std::string name;
  std::function<bool(std::string&)> run;
};

ModelParams model(double kappa, double lambda, double spacing, double beta) {
  ModelParams p;
  p.kappa = kappa;
  p.lambda_nn = lambda;
  p.lattice_spacing = spacing;
  p.beta = beta;
  return p;
}

std::vector<Check> checks() {
  std::vector<Check> v;

  v.push_back({"si_round_trip", [](std::string& note) {
                 double worst = 0.0;
                 for (double x : {1e-3, 0.7, 3.0, 250.0}) {
                   worst = std::max(worst, std::abs(length_from_si(length_to_si(x)) / x - 1));
                   worst = std::max(worst, std::abs(energy_from_si(energy_to_si(x)) / x - 1));
                   worst = std::max(worst, std::abs(beta_from_si(beta_to_si(x)) / x - 1));
                   worst = std::max(worst, std::abs(spring_from_si(spring_to_si(x)) / x - 1));
                 }
                 note = "max relative error " + num(worst);
                 return worst <= 1e-12;
               }});

  v.push_back({"series_vs_mehler", [](std::string& note) {
                 double worst = 0.0;
                 // Truncation error falls off like exp(-bhw n): 24 terms suffice for
                 // bhw >= 1, bhw = 0.1 needs about 160.
                 for (auto [b, n] : {std::pair{0.1, 160}, {1.0, 24}, {10.0, 24}})
                   for (double P = -1.0; P <= 1.0001; P += 0.25)
                     for (double Q = -1.0; Q <= 1.0001; Q += 0.25)
                       worst = std::max(worst,
                                        std::abs(w_sho_series(P, Q, b, n) - w_sho_mehler(P, Q, b)));
                 note = "max |dW| " + num(worst);
                 return worst <= 1e-6;
               }});

  v.push_back({"conjugation_symmetry", [](std::string& note) {
                 double worst = 0.0;
                 for (double b : {0.3, 2.0})
                   for (double P : {0.2, 0.9})
                     for (double Q : {-0.8, 0.5})
                       worst = std::max(worst, std::abs(w_sho_series(-P, Q, b, 8) -
                                                        std::conj(w_sho_series(P, Q, b, 8))));
                 note = "max deviation " + num(worst);
                 return worst == 0.0;
               }});

  v.push_back({"expansion_exactness", [](std::string& note) {
                 std::mt19937_64 rng(7);
                 std::normal_distribution<double> g(0.0, 0.2);
                 double worst = 0.0;
                 for (auto p : {model(1, 1, 1, 1), model(0, 0.02, 1, 1), model(0, 1, 0.1, 1),
                                model(0.5, 2, 1, 1)}) {
                   for (int n : {3, 4, 5}) {
                     p.n_particles = n;
                     for (auto kind : {MeanField::Singlet, MeanField::Pair}) {
                       MeanFieldLayout layout(p, kind);
                       for (int t = 0; t < 20; ++t) {
                         Configuration c(n);
                         for (auto& d : c.displacements()) d = g(rng);
                         const double u = potential_energy(p, c);
                         const double r = layout.expand(c).expanded_potential(p) - u;
                         worst = std::max(worst, std::abs(r) / std::max(1.0, std::abs(u)));
                       }
                     }
                   }
                 }
                 note = "max residual " + num(worst);
                 return worst <= 1e-10;
               }});

  v.push_back({"boson_plus_fermion_identity", [](std::string& note) {
                 ModelParams p = model(0, 1, 0.1, 1);
                 EngineOptions o;
                 WeightEvaluator eval(p, o);
                 std::mt19937_64 rng(11);
                 std::normal_distribution<double> g(0.0, 0.05);
                 std::normal_distribution<double> mom(0.0, std::sqrt(p.mass / p.beta));
                 double worst = 0.0;
                 for (int t = 0; t < 50; ++t) {
                   Configuration c(p.n_particles);
                   for (auto& d : c.displacements()) d = g(rng);
                   std::vector<double> m(p.n_particles);
                   for (auto& x : m) x = mom(rng);
                   for (const WeightSet& w : {eval.evaluate(c), eval.evaluate(c, m)})
                     for (int k = 0; k < 3; ++k)
                       worst = std::max(worst, std::abs(w.weight[3 * k + 1] + w.weight[3 * k + 2] -
                                                        2.0 * w.weight[3 * k]) /
                                                   std::abs(w.weight[3 * k]));
                 }
                 note = "max relative deviation " + num(worst);
                 return worst <= 1e-12;
               }});

  v.push_back({"permutation_counts", [](std::string& note) {
                 bool ok = true;
                 for (int n = 2; n <= 7; ++n) {
                   for (int cap : {0, 2})
                     ok &= static_cast<long>(enumerate_permutations(n, cap).permutations.size()) ==
                           count_permutations_formula(n, cap);
                   // The closed form counts dimers, double dimers and trimers; the
                   // N-2 transpositions (j, j+2) also have length 4.
                   if (n >= 3)
                     ok &= static_cast<long>(
                               enumerate_permutations_exhaustive(n, 4).permutations.size()) ==
                           count_permutations_formula(n, 4) + (n - 2);
                 }
                 note = ok ? "caps 0, 2, 4 for N = 2..7" : "count mismatch";
                 return ok;
               }});

  v.push_back({"ground_state_energies", [](std::string& note) {
                 const double a = ground_state_energy(normal_modes(model(1, 1, 1, 1)));
                 const double b = ground_state_energy(normal_modes(model(0, 0.02, 1, 1)));
                 const double c = ground_state_energy(normal_modes(model(0, 1, 0.1, 1)));
                 note = num(a) + " " + num(b) + " " + num(c);
                 return std::abs(a - 3.385) <= 5e-4 && std::abs(b - 0.3757) <= 5e-4 &&
                        std::abs(c - 2.6569) <= 5e-4;
               }});

  v.push_back({"umbrella_identity_and_drift", [](std::string& note) {
                 ModelParams p = model(1, 1, 1, 2);
                 EngineOptions o;
                 o.sweeps = 20000;
                 RunResult r = run_chains(p, o);
                 const double a = r.estimates.channels[0].energy.value;
                 const double b = r.estimates.plain_classical_energy;
                 const double drift = r.chains[0].max_potential_drift;
                 note = "classical " + num(a) + ", drift " + num(drift);
                 return a == b && drift <= 1e-9;
               }});

  return v;
}

}  // namespace

int run_selftest(std::ostream& out) {
  int failures = 0;
  for (const auto& c : checks()) {
    std::string note;
    bool ok = false;
    try {
      ok = c.run(note);
    } catch (const std::exception& e) {
      note = std::string("exception: ") + e.what();
    }
    if (!ok) ++failures;
    out << (ok ? "PASS " : "FAIL ") << c.name << " (" << note << ")\n";
  }
  out << (failures ? "selftest: " + std::to_string(failures) + " failure(s)\n"
                   : std::string("selftest: all checks passed\n"));
  return failures;
}

}  // namespace psmc
