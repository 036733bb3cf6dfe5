#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "psmc/model.hpp"
#include "psmc/units.hpp"

using namespace psmc;

namespace {

ModelParams make(int n, double kappa, double lambda, double spacing = 1.0) {
  ModelParams p;
  p.n_particles = n;
  p.kappa = kappa;
  p.lambda_nn = lambda;
  p.lattice_spacing = spacing;
  return p;
}

// Term-by-term sum with explicit wall entries, independent of the library.
double potential_by_terms(const ModelParams& p, const std::vector<double>& d) {
  const int n = static_cast<int>(d.size());
  std::vector<double> w(n + 2, 0.0);
  for (int j = 0; j < n; ++j) w[j + 1] = d[j];
  double u = 0.0;
  for (int j = 1; j <= n; ++j) u += 0.5 * p.kappa * p.mass * w[j] * w[j];
  for (int j = 0; j <= n; ++j) u += 0.5 * p.lambda_nn * p.mass * (w[j + 1] - w[j]) * (w[j + 1] - w[j]);
  return u;
}

}  // namespace

TEST_SUITE("core_model") {
  TEST_CASE("lattice is the potential minimum") {
    const auto p = make(4, 1, 1);
    CHECK(potential_energy(p, Configuration(4)) == 0.0);
  }

  TEST_CASE("two particles with alternating displacement") {
    // With m = 1: on-site (1/2)(0.02) plus springs (1/2)(0.01 + 0.04 + 0.01).
    auto p = make(2, 1, 1);
    p.mass = 1.0;
    const Configuration c(std::vector<double>{0.1, -0.1});
    CHECK(potential_energy(p, c) == doctest::Approx(0.04).epsilon(1e-14));
    CHECK(potential_energy(p, c) == doctest::Approx(potential_by_terms(p, {0.1, -0.1})));
  }

  TEST_CASE("uniform shift without on-site springs stretches only the walls") {
    auto p = make(4, 0, 0.3);
    const double c = 0.07;
    const Configuration cfg(std::vector<double>(4, c));
    CHECK(potential_energy(p, cfg) == doctest::Approx(p.lambda_nn * p.mass * c * c));
  }

  TEST_CASE("random configurations match the term-by-term oracle") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 0.3);
    for (int n : {1, 2, 5, 8}) {
      const auto p = make(n, 0.4, 1.7);
      for (int t = 0; t < 20; ++t) {
        std::vector<double> d(n);
        for (auto& x : d) x = g(rng);
        CHECK(potential_energy(p, Configuration(d)) ==
              doctest::Approx(potential_by_terms(p, d)).epsilon(1e-13));
      }
    }
  }

  TEST_CASE("particle energies sum to the potential") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> g(0.0, 0.2);
    const auto p = make(6, 0.5, 2.0);
    Configuration c(6);
    for (auto& x : c.displacements()) x = g(rng);
    double s = 0.0;
    for (int j = 0; j < 6; ++j) s += particle_energy(p, c, j);
    CHECK(s == doctest::Approx(potential_energy(p, c)).epsilon(1e-13));
    CHECK_THROWS_AS(particle_energy(p, c, 6), std::out_of_range);
    CHECK_THROWS_AS(particle_energy(p, c, -1), std::out_of_range);
  }

  TEST_CASE("incremental energy change matches recomputation") {
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g(0.0, 0.2);
    const auto p = make(5, 1, 1);
    Configuration c(5);
    for (auto& x : c.displacements()) x = g(rng);
    for (int j = 0; j < 5; ++j) {
      const double delta = g(rng);
      const double before = potential_energy(p, c);
      const double du = potential_energy_change(p, c, j, delta);
      c.displacement(j) += delta;
      CHECK(du == doctest::Approx(potential_energy(p, c) - before).epsilon(1e-10));
    }
  }

  TEST_CASE("positions and displacements") {
    const auto p = make(3, 1, 1, 0.1);
    const auto c = Configuration::from_positions(p, std::vector<double>{0.12, 0.2, 0.25});
    CHECK(c.displacement(0) == doctest::Approx(0.02));
    CHECK(c.displacement(2) == doctest::Approx(-0.05));
    CHECK(c.displacement_or_wall(-1) == 0.0);
    CHECK(c.displacement_or_wall(3) == 0.0);
    CHECK(c.position(p, 1) == doctest::Approx(0.2));
  }

  TEST_CASE("classical Hamiltonian adds kinetic energy") {
    const auto p = make(2, 1, 1);
    const Configuration c(std::vector<double>{0.01, 0.0});
    const std::vector<double> mom{3.0, -4.0};
    CHECK(classical_hamiltonian(p, c, mom) ==
          doctest::Approx(potential_energy(p, c) + 25.0 / (2.0 * p.mass)));
    CHECK_THROWS(classical_hamiltonian(p, c, std::vector<double>{1.0}));
  }

  TEST_CASE("parameter validation") {
    CHECK_NOTHROW(make(4, 1, 1).validate());
    CHECK_THROWS_AS(make(4, 0, 0).validate(), DegenerateModelError);
    CHECK_THROWS(make(0, 1, 1).validate());
    CHECK_THROWS(make(4, -1, 1).validate());
    CHECK_THROWS(make(4, 1, -1).validate());
    CHECK_THROWS(make(4, 1, 1, 0.0).validate());
    auto p = make(4, 1, 1);
    p.beta = 0.0;
    CHECK_THROWS(p.validate());
  }

  TEST_CASE("reduced units") {
    // m r_e^2 omega / hbar for neon.
    const double expected = 3.35e-26 * 3.13e-10 * 3.13e-10 * 3.28e12 / 1.054571817e-34;
    CHECK(reduced_mass() == doctest::Approx(expected).epsilon(1e-12));
    for (double x : {1e-4, 0.02, 1.0, 37.0}) {
      CHECK(length_from_si(length_to_si(x)) == doctest::Approx(x).epsilon(1e-12));
      CHECK(energy_from_si(energy_to_si(x)) == doctest::Approx(x).epsilon(1e-12));
      CHECK(beta_from_si(beta_to_si(x)) == doctest::Approx(x).epsilon(1e-12));
      CHECK(spring_from_si(spring_to_si(x)) == doctest::Approx(x).epsilon(1e-12));
    }
    CHECK(length_to_si(1.0) == doctest::Approx(3.13e-10));
    CHECK(energy_to_si(1.0) == doctest::Approx(1.054571817e-34 * 3.28e12));
  }
}
