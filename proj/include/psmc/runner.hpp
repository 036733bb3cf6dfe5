#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "psmc/engine.hpp"
#include "psmc/run_config.hpp"

namespace psmc {

struct BetaResult {
  double beta = 0.0;
  Estimates estimates;
  double exact_closed = 0.0;
  double exact_truncated = 0.0;
  double ground_state = 0.0;
  double classical_limit = 0.0;  // N / beta
  double acceptance = 0.0;       // mean over chains
  bool has_density = false;
  std::vector<double> exact_density;  // at the histogram bin centres
};

struct SweepResult {
  RunConfig config;
  std::vector<BetaResult> rows;
  double wall_seconds = 0.0;
};

/// Runs chains and the oracle at every beta of the config.  Progress lines go
/// to `log` when it is not null.
SweepResult run_sweep(const RunConfig& config, std::ostream* log = nullptr);

/// Writes energy_vs_beta.csv, density_profile.csv (when any density was
/// requested) and run_metadata.json into `dir`, creating it if needed.
/// Throws std::runtime_error when a file cannot be written.
void emit_csv(const SweepResult& result, const std::filesystem::path& dir);

/// Header of energy_vs_beta.csv.
std::vector<std::string> energy_csv_columns();
/// Header of density_profile.csv.
std::vector<std::string> density_csv_columns();

struct OracleRow {
  double beta = 0.0;
  double exact_closed = 0.0;
  double exact_truncated = 0.0;
  double ground_state = 0.0;
  double classical_limit = 0.0;
};

/// Exact energies on the config's beta list with l_max retained levels.
std::vector<OracleRow> oracle_table(const ModelParams& model, const std::vector<double>& betas,
                                    int l_max);
void write_oracle_csv(const std::vector<OracleRow>& rows, std::ostream& out);

/// Version string baked in at build time.
std::string version_string();

}  // namespace psmc
