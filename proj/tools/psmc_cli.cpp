#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "psmc/run_config.hpp"
#include "psmc/runner.hpp"
#include "psmc/selftest.hpp"

namespace {

struct Source {
  std::string preset;
  std::string config_path;
  std::vector<double> betas;
};

psmc::RunConfig resolve(const Source& src) {
  psmc::RunConfig base;
  if (!src.preset.empty()) base = psmc::preset(src.preset);
  if (!src.config_path.empty()) base = psmc::load_config(src.config_path, base);
  if (src.preset.empty() && src.config_path.empty())
    throw psmc::ConfigError("either --preset or --config is required");
  if (!src.betas.empty()) {
    base.betas = src.betas;
    base.density_betas.clear();
  }
  return base;
}

void add_source(CLI::App* cmd, Source& src) {
  cmd->add_option("--preset", src.preset, "Figure preset (fig1..fig5)")
      ->check(CLI::IsMember(psmc::preset_names()));
  cmd->add_option("--config", src.config_path, "JSON config; overrides the preset")
      ->check(CLI::ExistingFile);
  cmd->add_option("--beta-list", src.betas, "Inverse temperatures (beta hbar omega_LJ)")
      ->expected(1, -1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phase-space Monte Carlo for a one-dimensional quantum harmonic crystal"};
  app.set_version_flag("--version", psmc::version_string());
  app.require_subcommand(1);

  Source run_src;
  std::string out_dir;
  std::uint64_t seed = 0;
  int chains = 0;
  long sweeps = 0;
  std::string momentum;
  bool print_config = false, quiet = false;
  auto* run = app.add_subcommand("run", "Temperature sweep with all nine channels");
  add_source(run, run_src);
  run->add_option("--out", out_dir, "Output directory");
  run->add_option("--seed", seed, "RNG seed");
  run->add_option("--chains", chains, "Independent chains")->check(CLI::PositiveNumber);
  run->add_option("--sweeps", sweeps, "Sweeps per chain and beta")->check(CLI::PositiveNumber);
  run->add_option("--momentum", momentum, "analytic or sampled")
      ->check(CLI::IsMember({"analytic", "sampled"}));
  run->add_flag("--print-config", print_config, "Print the resolved config and exit");
  run->add_flag("--quiet", quiet, "No progress output");

  Source oracle_src;
  int l_max = 0;
  std::string oracle_out;
  auto* oracle = app.add_subcommand("oracle", "Exact phonon energies (closed form and truncated)");
  add_source(oracle, oracle_src);
  oracle->add_option("--lmax", l_max, "Retained energy levels")->check(CLI::PositiveNumber);
  oracle->add_option("--out", oracle_out, "CSV file (default: stdout)");

  auto* selftest = app.add_subcommand("selftest", "Run the invariant checks");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      psmc::RunConfig cfg = resolve(run_src);
      if (!out_dir.empty()) cfg.output_dir = out_dir;
      if (run->count("--seed")) cfg.engine.seed = seed;
      if (chains > 0) cfg.engine.chains = chains;
      if (sweeps > 0) cfg.engine.sweeps = sweeps;
      if (!momentum.empty()) cfg.engine.momentum = psmc::parse_momentum_mode(momentum);
      cfg.validate();
      if (print_config) {
        std::cout << psmc::to_json_text(cfg) << '\n';
        return 0;
      }
      const auto result = psmc::run_sweep(cfg, quiet ? nullptr : &std::cerr);
      psmc::emit_csv(result, cfg.output_dir);
      if (!quiet) std::cerr << "wrote " << cfg.output_dir << '\n';
      return 0;
    }
    if (oracle->parsed()) {
      psmc::RunConfig cfg = resolve(oracle_src);
      if (l_max > 0) cfg.l_max = l_max;
      cfg.validate();
      const auto rows = psmc::oracle_table(cfg.model, cfg.betas, cfg.l_max);
      if (oracle_out.empty()) {
        psmc::write_oracle_csv(rows, std::cout);
      } else {
        std::ofstream f(oracle_out);
        if (!f) throw std::runtime_error("cannot write '" + oracle_out + "'");
        psmc::write_oracle_csv(rows, f);
      }
      return 0;
    }
    if (selftest->parsed()) return psmc::run_selftest(std::cout) == 0 ? 0 : 1;
  } catch (const psmc::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
