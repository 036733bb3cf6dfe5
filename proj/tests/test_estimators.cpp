#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "psmc/estimators.hpp"

using namespace psmc;

namespace {

WeightSet uniform_weights(double w, double e) {
  WeightSet s;
  for (int c = 0; c < kChannels; ++c) {
    s.weight[c] = w;
    s.energy[c] = w * e;
  }
  return s;
}

}  // namespace

TEST_SUITE("estimators") {
  TEST_CASE("channel naming") {
    CHECK(channel_name(channel_index(WeightKind::Classical, SymmetryKind::Distinguishable)) == "classical_dm0");
    CHECK(channel_name(channel_index(WeightKind::Singlet, SymmetryKind::Boson)) == "singlet_boson");
    CHECK(channel_name(channel_index(WeightKind::Pair, SymmetryKind::Fermion)) == "pair_fermion");
  }

  TEST_CASE("default histogram layout") {
    ModelParams p;
    const auto h = HistogramSpec::for_model(p);
    CHECK(h.lo == -1.0);
    CHECK(h.hi == 6.0);
    CHECK(h.bin_width() == doctest::Approx(0.05));
    p.lattice_spacing = 0.1;
    const auto g = HistogramSpec::for_model(p);
    CHECK(g.bin_width() == doctest::Approx(0.005));
    CHECK(g.lo == doctest::Approx(-0.1));
    CHECK(g.hi == doctest::Approx(0.6));
    CHECK(h.bin(-1.0) == 0);
    CHECK(h.bin(-1.0001) == -1);
    CHECK(h.bin(6.0) == -1);
    CHECK(h.bin(5.9999) == h.n_bins - 1);
    CHECK(h.center(0) == doctest::Approx(-0.975));
  }

  TEST_CASE("jackknife of a ratio with equal denominators is the standard error of the mean") {
    std::mt19937_64 rng(41);
    std::normal_distribution<double> g(3.0, 0.5);
    std::vector<double> num(20), den(20, 4.0);
    for (auto& x : num) x = g(rng);
    double mean = 0.0;
    for (double x : num) mean += x / 4.0;
    mean /= 20;
    double ss = 0.0;
    for (double x : num) ss += (x / 4.0 - mean) * (x / 4.0 - mean);
    const double se = std::sqrt(ss / (20 * 19));
    const auto r = jackknife_ratio(num, den);
    CHECK(r.value == doctest::Approx(mean));
    CHECK(r.error == doctest::Approx(2.0 * se).epsilon(1e-12));
  }

  TEST_CASE("merge is commutative and associative") {
    const auto h = HistogramSpec{-1.0, 2.0, 6};
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> u(-3, 5);
    auto fill = [&](EstimatorSet& s) {
      for (int t = 0; t < 30; ++t) {
        const double pos[2] = {u(rng) * 0.25, u(rng) * 0.5};
        s.add(t % 4, uniform_weights(u(rng), u(rng)), u(rng), pos);
      }
    };
    EstimatorSet a(4, h), b(4, h), c(4, h);
    fill(a);
    fill(b);
    fill(c);
    EstimatorSet ab = a;
    ab.merge(b);
    EstimatorSet ba = b;
    ba.merge(a);
    EstimatorSet ab_c = ab;
    ab_c.merge(c);
    EstimatorSet bc = b;
    bc.merge(c);
    EstimatorSet a_bc = a;
    a_bc.merge(bc);
    for (int k = 0; k < 4; ++k) {
      CHECK(ab.block(k).count == ba.block(k).count);
      CHECK(ab_c.block(k).plain_energy == a_bc.block(k).plain_energy);
      for (int ch = 0; ch < kChannels; ++ch) {
        CHECK(ab.block(k).channels[ch].w_e == ba.block(k).channels[ch].w_e);
        CHECK(ab_c.block(k).channels[ch].w == a_bc.block(k).channels[ch].w);
        CHECK(ab_c.block(k).channels[ch].hist == a_bc.block(k).channels[ch].hist);
      }
    }
    EstimatorSet empty;
    empty.merge(a);
    CHECK(empty.n_blocks() == 4);
    CHECK_THROWS(a.merge(EstimatorSet(5, h)));
  }

  TEST_CASE("unit weights reduce to plain averages") {
    const auto h = HistogramSpec{-1.0, 6.0, 140};
    EstimatorSet s(20, h);
    std::mt19937_64 rng(43);
    std::normal_distribution<double> g(2.0, 0.3), q(2.5, 0.4);
    double sum = 0.0;
    for (int t = 0; t < 2000; ++t) {
      const double e = g(rng);
      sum += e;
      const double pos[4] = {q(rng), q(rng), q(rng), q(rng)};
      s.add(t / 100, uniform_weights(1.0, e), e, pos);
    }
    const auto est = finalize(s);
    for (const auto& ch : est.channels) {
      CHECK(ch.energy.value == doctest::Approx(sum / 2000));
      CHECK(ch.denominator.value == doctest::Approx(1.0));
      CHECK_FALSE(ch.near_pole);
      double integral = 0.0;
      for (double d : ch.density) integral += d * h.bin_width();
      CHECK(integral == doctest::Approx(4.0).epsilon(1e-12));
    }
    CHECK(est.plain_classical_energy == est.channels[0].energy.value);
    for (const auto& d : est.boson_minus_fermion) {
      CHECK(d.value == 0.0);
      CHECK(d.error == 0.0);
    }
  }

  TEST_CASE("out-of-range particles are tracked separately") {
    const auto h = HistogramSpec{0.0, 1.0, 10};
    EstimatorSet s(2, h);
    const double pos[3] = {0.5, -0.2, 1.5};
    s.add(0, uniform_weights(1.0, 1.0), 1.0, pos);
    s.add(1, uniform_weights(1.0, 1.0), 1.0, pos);
    const auto t = s.total();
    CHECK(t.channels[0].out_of_range == 4.0);
    double in = 0.0;
    for (double x : t.channels[0].hist) in += x;
    CHECK(in == 2.0);
  }

  TEST_CASE("near-pole flag") {
    const auto h = HistogramSpec{0.0, 1.0, 4};
    EstimatorSet s(4, h);
    const double pos[1] = {0.5};
    for (int t = 0; t < 400; ++t) {
      WeightSet w = uniform_weights(1.0, 1.0);
      const int fermion = channel_index(WeightKind::Classical, SymmetryKind::Fermion);
      const double v = (t % 2 ? 1.0 : -1.0) * (1.0 + 1e-6 * t);
      w.weight[fermion] = v;
      w.energy[fermion] = v * 2.0;
      s.add(t / 100, w, 1.0, pos);
    }
    const auto est = finalize(s);
    CHECK(est.channels[channel_index(WeightKind::Classical, SymmetryKind::Fermion)].near_pole);
    CHECK_FALSE(est.channels[channel_index(WeightKind::Classical, SymmetryKind::Boson)].near_pole);
    CHECK(est.difference_near_pole[0]);
    CHECK_FALSE(est.difference_near_pole[1]);
  }

  TEST_CASE("needs two populated blocks") {
    const auto h = HistogramSpec{0.0, 1.0, 4};
    EstimatorSet s(4, h);
    const double pos[1] = {0.5};
    s.add(0, uniform_weights(1.0, 1.0), 1.0, pos);
    CHECK_THROWS(finalize(s));
    CHECK_THROWS(EstimatorSet(1, h));
  }
}
