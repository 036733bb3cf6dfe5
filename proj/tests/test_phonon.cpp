#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "psmc/phonon.hpp"

using namespace psmc;

namespace {

ModelParams make(double kappa, double lambda, int n = 4, double spacing = 1.0) {
  ModelParams p;
  p.n_particles = n;
  p.kappa = kappa;
  p.lambda_nn = lambda;
  p.lattice_spacing = spacing;
  return p;
}

// Dense symmetric eigensolve of the chain Hessian (in m omega^2 units).
Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigen_oracle(const ModelParams& p) {
  const int n = p.n_particles;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    h(j, j) = p.kappa + 2.0 * p.lambda_nn;
    if (j + 1 < n) h(j, j + 1) = h(j + 1, j) = -p.lambda_nn;
  }
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h);
}

// Every occupation vector with energy <= cap, sorted.
std::vector<double> brute_levels(const PhononSpectrum& s, double cap) {
  std::vector<double> out;
  std::vector<int> occ(s.n, 0);
  const double e0 = ground_state_energy(s);
  std::function<void(int, double)> rec = [&](int k, double e) {
    if (e > cap + 1e-12) return;
    if (k == s.n) {
      out.push_back(e);
      return;
    }
    for (int q = 0;; ++q) {
      const double eq = e + q * s.hbar * s.frequencies[k];
      if (eq > cap + 1e-12) break;
      rec(k + 1, eq);
    }
  };
  rec(0, e0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_SUITE("phonon_oracle") {
  TEST_CASE("closed-form modes match a dense eigensolve") {
    for (auto p : {make(1, 1), make(0, 0.02), make(0, 1, 4, 0.1), make(0.3, 2.0, 7)}) {
      const auto spec = normal_modes(p);
      const auto es = eigen_oracle(p);
      for (int k = 0; k < p.n_particles; ++k) {
        CHECK(spec.stiffness[k] == doctest::Approx(es.eigenvalues()[k]).epsilon(1e-12));
        CHECK(spec.frequencies[k] == doctest::Approx(std::sqrt(es.eigenvalues()[k])));
        // Eigenvectors agree up to sign.
        double dot = 0.0;
        for (int j = 0; j < p.n_particles; ++j) dot += spec.eigenvector(j, k) * es.eigenvectors()(j, k);
        CHECK(std::abs(dot) == doctest::Approx(1.0).epsilon(1e-10));
      }
    }
  }

  TEST_CASE("ground-state energies") {
    CHECK(ground_state_energy(normal_modes(make(1, 1))) == doctest::Approx(3.385).epsilon(0.0005 / 3.385));
    CHECK(ground_state_energy(normal_modes(make(0, 0.02))) == doctest::Approx(0.3757).epsilon(0.0005 / 0.3757));
    CHECK(ground_state_energy(normal_modes(make(0, 1, 4, 0.1))) == doctest::Approx(2.6569).epsilon(0.0005 / 2.6569));
    // Independent check: half the trace of the square-root Hessian.
    const auto es = eigen_oracle(make(1, 1));
    CHECK(ground_state_energy(normal_modes(make(1, 1))) ==
          doctest::Approx(0.5 * es.eigenvalues().cwiseSqrt().sum()).epsilon(1e-12));
  }

  TEST_CASE("degenerate model is rejected") {
    CHECK_THROWS_AS(normal_modes(make(0, 0)), DegenerateModelError);
  }

  TEST_CASE("closed-form energy limits") {
    const auto s = normal_modes(make(1, 1));
    CHECK(exact_energy_closed(s, 200.0) == doctest::Approx(ground_state_energy(s)).epsilon(1e-12));
    // High temperature: N/beta plus the leading quantum correction.
    double w2 = 0.0;
    for (double w : s.frequencies) w2 += w * w;
    const double b = 1e-3;
    CHECK(exact_energy_closed(s, b) == doctest::Approx(4.0 / b + b * w2 / 12.0).epsilon(1e-10));
  }

  TEST_CASE("truncated enumeration matches brute force") {
    for (auto p : {make(1, 1), make(0, 0.02), make(0, 1, 4, 0.1)}) {
      const auto s = normal_modes(p);
      const int l_max = 400;
      const auto t = enumerate_levels(s, l_max);
      REQUIRE(t.size() == static_cast<std::size_t>(l_max));
      const auto brute = brute_levels(s, t.levels.back());
      REQUIRE(brute.size() >= t.size());
      for (int i = 0; i < l_max; ++i) CHECK(t.levels[i] == doctest::Approx(brute[i]).epsilon(1e-12));
      // Occupations reproduce the level energies.
      for (std::size_t i = 0; i < t.size(); i += 37) {
        double e = 0.0;
        const auto occ = t.occupation(i);
        for (int k = 0; k < s.n; ++k) e += s.hbar * s.frequencies[k] * (occ[k] + 0.5);
        CHECK(e == doctest::Approx(t.levels[i]).epsilon(1e-12));
      }
    }
  }

  TEST_CASE("truncated energy at the operating points") {
    const auto s = normal_modes(make(0, 0.02));
    CHECK(truncated_energy(enumerate_levels(s, 20000), 3.0) == doctest::Approx(1.3707).epsilon(0.001 / 1.3707));
    CHECK(truncated_energy(enumerate_levels(s, 10000), 3.0) == doctest::Approx(1.3627).epsilon(0.001 / 1.3627));
    CHECK(exact_energy_closed(s, 3.0) == doctest::Approx(1.37301).epsilon(1e-5));
  }

  TEST_CASE("truncated energy approaches the closed form as l_max grows") {
    const auto s = normal_modes(make(1, 1));
    double prev = 1e9;
    for (int l : {100, 1000, 10000}) {
      const double err = std::abs(truncated_energy(enumerate_levels(s, l), 1.0) - exact_energy_closed(s, 1.0));
      CHECK(err < prev);
      prev = err;
    }
    CHECK(truncated_energy(enumerate_levels(s, 10000), 10.0) ==
          doctest::Approx(exact_energy_closed(s, 10.0)).epsilon(1e-10));
  }

  TEST_CASE("errors") {
    const auto s = normal_modes(make(1, 1));
    CHECK_THROWS_AS(enumerate_levels(s, 1000, 10), ResourceLimitError);
    CHECK_THROWS(truncated_energy(TruncatedSpectrum{}, 1.0));
  }

  TEST_CASE("unsymmetrized density") {
    const auto p = make(0, 0.02);
    const auto s = normal_modes(p);
    const auto var = exact_position_variances(p, s, 2.0);
    // Oracle: diagonal of (hbar / 2m) H^{-1/2} coth(beta hbar H^{1/2} / 2) from the dense solve.
    const auto es = eigen_oracle(p);
    for (int j = 0; j < 4; ++j) {
      double v = 0.0;
      for (int k = 0; k < 4; ++k) {
        const double w = std::sqrt(es.eigenvalues()[k]);
        const double x = es.eigenvectors()(j, k);
        v += x * x * p.hbar / (2.0 * p.mass * w) / std::tanh(2.0 * p.hbar * w / 2.0);
      }
      CHECK(var[j] == doctest::Approx(v).epsilon(1e-12));
    }
    // Integrates to N.
    std::vector<double> grid;
    for (double q = -3.0; q <= 8.0; q += 0.001) grid.push_back(q);
    const auto rho = exact_density_unsymmetrized(p, s, 2.0, grid);
    double total = 0.0;
    for (double r : rho) total += r * 0.001;
    CHECK(total == doctest::Approx(4.0).epsilon(1e-6));
    // Spill-over beyond the walls.
    const auto edge = exact_density_unsymmetrized(p, s, 2.0, std::vector<double>{-0.1, 5.1});
    CHECK(edge[0] > 0.0);
    CHECK(edge[1] > 0.0);
  }
}
