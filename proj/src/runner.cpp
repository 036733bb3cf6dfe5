#include "psmc/runner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

#include "psmc/phonon.hpp"

#ifndef PSMC_VERSION
#define PSMC_VERSION "unknown"
#endif

namespace psmc {

std::string version_string() { return PSMC_VERSION; }

namespace {

std::string num(double v) {
  if (!std::isfinite(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? "," : "") << cells[i];
  out << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  return out;
}

void close_output(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw std::runtime_error("error while writing '" + path.string() + "'");
}

}  // namespace

std::vector<std::string> energy_csv_columns() {
  std::vector<std::string> cols = {"beta_hw_lj", "exact_closed_energy_hw_lj",
                                   "exact_truncated_energy_hw_lj",
                                   "classical_limit_energy_hw_lj", "ground_state_energy_hw_lj"};
  for (int c = 0; c < kChannels; ++c) {
    const std::string n = channel_name(c);
    cols.push_back(n + "_energy_hw_lj");
    cols.push_back(n + "_energy_err_hw_lj");
    cols.push_back(n + "_denominator");
    cols.push_back(n + "_denominator_err");
    cols.push_back(n + "_near_pole");
  }
  for (int k = 0; k < 3; ++k) {
    const std::string n = weight_kind_name(static_cast<WeightKind>(k));
    cols.push_back(n + "_boson_minus_fermion_hw_lj");
    cols.push_back(n + "_boson_minus_fermion_err_hw_lj");
    cols.push_back(n + "_difference_near_pole");
  }
  cols.push_back("samples");
  cols.push_back("acceptance");
  return cols;
}

std::vector<std::string> density_csv_columns() {
  std::vector<std::string> cols = {"beta_hw_lj", "q_over_re",
                                   "exact_unsymmetrized_density_per_re"};
  for (int c = 0; c < kChannels; ++c) {
    cols.push_back(channel_name(c) + "_density_per_re");
    cols.push_back(channel_name(c) + "_density_err_per_re");
  }
  for (int k = 0; k < 3; ++k) {
    const std::string n = weight_kind_name(static_cast<WeightKind>(k));
    cols.push_back(n + "_boson_minus_fermion_density_per_re");
    cols.push_back(n + "_boson_minus_fermion_density_err_per_re");
  }
  return cols;
}

std::vector<OracleRow> oracle_table(const ModelParams& model, const std::vector<double>& betas,
                                    int l_max) {
  const PhononSpectrum spec = normal_modes(model);
  const TruncatedSpectrum levels = enumerate_levels(spec, l_max);
  std::vector<OracleRow> rows;
  for (double b : betas) {
    OracleRow r;
    r.beta = b;
    r.exact_closed = exact_energy_closed(spec, b);
    r.exact_truncated = truncated_energy(levels, b);
    r.ground_state = ground_state_energy(spec);
    r.classical_limit = model.n_particles / b;
    rows.push_back(r);
  }
  return rows;
}

void write_oracle_csv(const std::vector<OracleRow>& rows, std::ostream& out) {
  write_row(out, {"beta_hw_lj", "exact_closed_energy_hw_lj", "exact_truncated_energy_hw_lj",
                  "ground_state_energy_hw_lj", "classical_limit_energy_hw_lj"});
  for (const auto& r : rows)
    write_row(out, {num(r.beta), num(r.exact_closed), num(r.exact_truncated),
                    num(r.ground_state), num(r.classical_limit)});
}

SweepResult run_sweep(const RunConfig& config, std::ostream* log) {
  config.validate();
  const auto start = std::chrono::steady_clock::now();
  SweepResult out;
  out.config = config;
  const PhononSpectrum spec = normal_modes(config.model);
  const TruncatedSpectrum levels = enumerate_levels(spec, config.l_max);

  for (double beta : config.betas) {
    ModelParams params = config.model;
    params.beta = beta;
    RunResult run = run_chains(params, config.engine);
    BetaResult row;
    row.beta = beta;
    row.estimates = std::move(run.estimates);
    row.exact_closed = exact_energy_closed(spec, beta);
    row.exact_truncated = truncated_energy(levels, beta);
    row.ground_state = ground_state_energy(spec);
    row.classical_limit = params.n_particles / beta;
    for (const auto& c : run.chains) row.acceptance += c.acceptance / run.chains.size();
    const auto& db = config.density_betas;
    row.has_density = db.empty() || std::find(db.begin(), db.end(), beta) != db.end();
    if (row.has_density) {
      const auto& h = row.estimates.histogram;
      std::vector<double> grid(h.n_bins);
      for (int i = 0; i < h.n_bins; ++i) grid[i] = h.center(i);
      row.exact_density = exact_density_unsymmetrized(params, spec, beta, grid);
    }
    if (log) {
      const auto& e = row.estimates.channels;
      *log << "beta " << num(beta) << ": classical " << num(e[0].energy.value) << ", singlet "
           << num(e[3].energy.value) << ", pair " << num(e[6].energy.value) << ", exact "
           << num(row.exact_closed) << '\n';
    }
    out.rows.push_back(std::move(row));
  }
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create '" + dir.string() + "': " + ec.message());

  const auto energy_path = dir / "energy_vs_beta.csv";
  auto energy = open_output(energy_path);
  write_row(energy, energy_csv_columns());
  for (const auto& r : result.rows) {
    const auto& est = r.estimates;
    std::vector<std::string> cells = {num(r.beta), num(r.exact_closed), num(r.exact_truncated),
                                      num(r.classical_limit), num(r.ground_state)};
    for (const auto& ch : est.channels) {
      cells.push_back(ch.near_pole ? "nan" : num(ch.energy.value));
      cells.push_back(ch.near_pole ? "nan" : num(ch.energy.error));
      cells.push_back(num(ch.denominator.value));
      cells.push_back(num(ch.denominator.error));
      cells.push_back(ch.near_pole ? "1" : "0");
    }
    for (int k = 0; k < 3; ++k) {
      const bool pole = est.difference_near_pole[k];
      cells.push_back(pole ? "nan" : num(est.boson_minus_fermion[k].value));
      cells.push_back(pole ? "nan" : num(est.boson_minus_fermion[k].error));
      cells.push_back(pole ? "1" : "0");
    }
    cells.push_back(num(est.samples));
    cells.push_back(num(r.acceptance));
    write_row(energy, cells);
  }
  close_output(energy, energy_path);

  const bool any_density =
      std::any_of(result.rows.begin(), result.rows.end(), [](auto& r) { return r.has_density; });
  if (any_density) {
    const auto density_path = dir / "density_profile.csv";
    auto density = open_output(density_path);
    write_row(density, density_csv_columns());
    for (const auto& r : result.rows) {
      if (!r.has_density) continue;
      const auto& est = r.estimates;
      for (int i = 0; i < est.histogram.n_bins; ++i) {
        std::vector<std::string> cells = {num(r.beta), num(est.histogram.center(i)),
                                          num(r.exact_density[i])};
        for (const auto& ch : est.channels) {
          cells.push_back(ch.near_pole ? "nan" : num(ch.density[i]));
          cells.push_back(ch.near_pole ? "nan" : num(ch.density_error[i]));
        }
        for (int k = 0; k < 3; ++k) {
          const bool pole = est.difference_near_pole[k];
          cells.push_back(pole ? "nan" : num(est.density_difference[k][i]));
          cells.push_back(pole ? "nan" : num(est.density_difference_error[k][i]));
        }
        write_row(density, cells);
      }
    }
    close_output(density, density_path);
  }

  const auto meta_path = dir / "run_metadata.json";
  auto meta = open_output(meta_path);
  nlohmann::json doc = {
      {"config", nlohmann::json::parse(to_json_text(result.config))},
      {"seed", result.config.engine.seed},
      {"version", version_string()},
      {"wall_seconds", result.wall_seconds},
      {"files", any_density ? nlohmann::json{"energy_vs_beta.csv", "density_profile.csv"}
                            : nlohmann::json{"energy_vs_beta.csv"}},
  };
  meta << doc.dump(2) << '\n';
  close_output(meta, meta_path);
}

}  // namespace psmc
