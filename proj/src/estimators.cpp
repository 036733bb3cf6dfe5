#include "psmc/estimators.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>

namespace psmc {

std::string weight_kind_name(WeightKind w) {
  switch (w) {
    case WeightKind::Classical: return "classical";
    case WeightKind::Singlet: return "singlet";
    case WeightKind::Pair: return "pair";
  }
  return "?";
}

std::string symmetry_kind_name(SymmetryKind s) {
  switch (s) {
    case SymmetryKind::Distinguishable: return "dm0";
    case SymmetryKind::Boson: return "boson";
    case SymmetryKind::Fermion: return "fermion";
  }
  return "?";
}

std::string channel_name(int channel) {
  return weight_kind_name(static_cast<WeightKind>(channel / 3)) + "_" +
         symmetry_kind_name(static_cast<SymmetryKind>(channel % 3));
}

int HistogramSpec::bin(double q) const {
  if (!(q >= lo && q < hi)) return -1;
  const int b = static_cast<int>((q - lo) / bin_width());
  return b < n_bins ? b : n_bins - 1;
}

HistogramSpec HistogramSpec::for_model(const ModelParams& params, double bins_per_spacing) {
  HistogramSpec h;
  h.lo = -params.lattice_spacing;
  h.hi = (params.n_particles + 2) * params.lattice_spacing;
  h.n_bins = static_cast<int>(std::lround((params.n_particles + 3) * bins_per_spacing));
  return h;
}

EstimatorSet::EstimatorSet(int n_blocks, const HistogramSpec& hist) : hist_(hist) {
  if (n_blocks < 2) throw std::invalid_argument("need at least two blocks");
  if (hist.n_bins < 1 || !(hist.hi > hist.lo)) throw std::invalid_argument("bad histogram");
  blocks_.resize(n_blocks);
  for (auto& b : blocks_)
    for (auto& c : b.channels) c.hist.assign(hist.n_bins, 0.0);
}

void EstimatorSet::add(int block, const WeightSet& w, double plain_energy,
                       std::span<const double> positions) {
  auto& b = blocks_[block];
  b.count += 1.0;
  b.plain_energy += plain_energy;
  thread_local std::vector<int> bins;
  const int n = static_cast<int>(positions.size());
  bins.resize(n);
  for (int j = 0; j < n; ++j) bins[j] = hist_.bin(positions[j]);
  for (int c = 0; c < kChannels; ++c) {
    auto& s = b.channels[c];
    const double re = w.weight[c].real();
    s.w += re;
    s.w_e += w.energy[c].real();
    s.w_im += w.weight[c].imag();
    s.w_e_im += w.energy[c].imag();
    s.w_abs += std::abs(w.weight[c]);
    for (int j = 0; j < n; ++j) {
      if (bins[j] < 0)
        s.out_of_range += re;
      else
        s.hist[bins[j]] += re;
    }
  }
}

namespace {

void add_block(BlockSums& a, const BlockSums& b) {
  a.count += b.count;
  a.plain_energy += b.plain_energy;
  for (int c = 0; c < kChannels; ++c) {
    auto& x = a.channels[c];
    const auto& y = b.channels[c];
    x.w += y.w;
    x.w_e += y.w_e;
    x.w_im += y.w_im;
    x.w_e_im += y.w_e_im;
    x.w_abs += y.w_abs;
    x.out_of_range += y.out_of_range;
    for (std::size_t i = 0; i < x.hist.size(); ++i) x.hist[i] += y.hist[i];
  }
}

}  // namespace

void EstimatorSet::merge(const EstimatorSet& other) {
  if (blocks_.empty()) {
    *this = other;
    return;
  }
  if (other.blocks_.size() != blocks_.size() || other.hist_.n_bins != hist_.n_bins)
    throw std::invalid_argument("estimator layouts differ");
  for (std::size_t k = 0; k < blocks_.size(); ++k) add_block(blocks_[k], other.blocks_[k]);
}

BlockSums EstimatorSet::total() const {
  BlockSums t = blocks_.at(0);
  for (std::size_t k = 1; k < blocks_.size(); ++k) add_block(t, blocks_[k]);
  return t;
}

namespace {

// Leave-one-block-out estimates of a scalar functional; returns twice the
// jackknife standard error around the full-sample value.
ValueError jackknife(int n, const std::function<double(int)>& estimate) {
  ValueError out;
  out.value = estimate(-1);
  if (n < 2) return out;
  std::vector<double> loo(n);
  double mean = 0.0;
  for (int k = 0; k < n; ++k) {
    loo[k] = estimate(k);
    mean += loo[k];
  }
  mean /= n;
  double ss = 0.0;
  for (double v : loo) ss += (v - mean) * (v - mean);
  out.error = 2.0 * std::sqrt((n - 1.0) / n * ss);
  return out;
}

}  // namespace

ValueError jackknife_ratio(std::span<const double> num, std::span<const double> den) {
  if (num.size() != den.size()) throw std::invalid_argument("block counts differ");
  double sn = 0.0, sd = 0.0;
  for (std::size_t k = 0; k < num.size(); ++k) {
    sn += num[k];
    sd += den[k];
  }
  return jackknife(static_cast<int>(num.size()), [&](int k) {
    if (k < 0) return sn / sd;
    return (sn - num[k]) / (sd - den[k]);
  });
}

ValueError block_mean(std::span<const double> values, std::span<const double> counts) {
  return jackknife_ratio(values, counts);
}

Estimates finalize(const EstimatorSet& set) {
  std::vector<const BlockSums*> blocks;
  for (int k = 0; k < set.n_blocks(); ++k)
    if (set.block(k).count > 0.0) blocks.push_back(&set.block(k));
  const int nb = static_cast<int>(blocks.size());
  if (nb < 2) throw std::runtime_error("fewer than two populated blocks");

  Estimates est;
  est.histogram = set.histogram();
  const BlockSums tot = set.total();
  est.samples = tot.count;
  est.plain_classical_energy = tot.plain_energy / tot.count;

  auto column = [&](auto getter) {
    std::vector<double> v(nb);
    for (int k = 0; k < nb; ++k) v[k] = getter(*blocks[k]);
    return v;
  };
  const auto counts = column([](const BlockSums& b) { return b.count; });

  for (int c = 0; c < kChannels; ++c) {
    auto& ch = est.channels[c];
    const int ref = c - c % 3;
    const auto w = column([c](const BlockSums& b) { return b.channels[c].w; });
    const auto we = column([c](const BlockSums& b) { return b.channels[c].w_e; });
    const auto wref = column([ref](const BlockSums& b) { return b.channels[ref].w; });
    ch.weight_sum = tot.channels[c].w;
    ch.abs_weight_sum = tot.channels[c].w_abs;
    ch.energy = jackknife_ratio(we, w);
    ch.denominator = jackknife_ratio(w, wref);
    ch.near_pole = std::abs(ch.weight_sum) < kNearPoleThreshold * ch.abs_weight_sum;
    ch.imag_weight =
        block_mean(column([c](const BlockSums& b) { return b.channels[c].w_im; }), counts);
    ch.imag_energy =
        block_mean(column([c](const BlockSums& b) { return b.channels[c].w_e_im; }), counts);

    const int nbins = est.histogram.n_bins;
    const double width = est.histogram.bin_width();
    ch.density.resize(nbins);
    ch.density_error.resize(nbins);
    for (int i = 0; i < nbins; ++i) {
      const auto h = column([c, i](const BlockSums& b) { return b.channels[c].hist[i]; });
      const ValueError r = jackknife_ratio(h, w);
      ch.density[i] = r.value / width;
      ch.density_error[i] = r.error / width;
    }
  }

  for (int kind = 0; kind < 3; ++kind) {
    const int cb = 3 * kind + 1, cf = 3 * kind + 2;
    const auto wb = column([cb](const BlockSums& b) { return b.channels[cb].w; });
    const auto eb = column([cb](const BlockSums& b) { return b.channels[cb].w_e; });
    const auto wf = column([cf](const BlockSums& b) { return b.channels[cf].w; });
    const auto ef = column([cf](const BlockSums& b) { return b.channels[cf].w_e; });
    double sbw = 0, sbe = 0, sfw = 0, sfe = 0;
    for (int k = 0; k < nb; ++k) {
      sbw += wb[k];
      sbe += eb[k];
      sfw += wf[k];
      sfe += ef[k];
    }
    est.boson_minus_fermion[kind] = jackknife(nb, [&](int k) {
      if (k < 0) return sbe / sbw - sfe / sfw;
      return (sbe - eb[k]) / (sbw - wb[k]) - (sfe - ef[k]) / (sfw - wf[k]);
    });
    est.difference_near_pole[kind] = est.channels[cb].near_pole || est.channels[cf].near_pole;

    const int nbins = est.histogram.n_bins;
    const double width = est.histogram.bin_width();
    auto& dd = est.density_difference[kind];
    auto& de = est.density_difference_error[kind];
    dd.resize(nbins);
    de.resize(nbins);
    for (int i = 0; i < nbins; ++i) {
      const auto hb = column([cb, i](const BlockSums& b) { return b.channels[cb].hist[i]; });
      const auto hf = column([cf, i](const BlockSums& b) { return b.channels[cf].hist[i]; });
      double shb = 0, shf = 0;
      for (int k = 0; k < nb; ++k) {
        shb += hb[k];
        shf += hf[k];
      }
      const ValueError r = jackknife(nb, [&](int k) {
        if (k < 0) return shb / sbw - shf / sfw;
        return (shb - hb[k]) / (sbw - wb[k]) - (shf - hf[k]) / (sfw - wf[k]);
      });
      dd[i] = r.value / width;
      de[i] = r.error / width;
    }
  }
  return est;
}

}  // namespace psmc
