#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "psmc/engine.hpp"
#include "psmc/model.hpp"

namespace psmc {

/// Everything one sweep over inverse temperatures needs.  `model.beta` is
/// ignored; the sweep takes its values from `betas`.
struct RunConfig {
  std::string preset;  // informational label
  ModelParams model;
  std::vector<double> betas;
  std::vector<double> density_betas;  // empty: density at every beta
  EngineOptions engine;
  int l_max = 10000;
  std::string output_dir = "out";

  /// Throws ConfigError on any invalid field.
  void validate() const;
};

/// Invalid configuration.  `line` is the 1-based source line when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, int line = 0);
  int line() const { return line_; }

 private:
  int line_;
};

/// Names accepted by preset(): fig1 ... fig5.
std::vector<std::string> preset_names();

/// Parameter sets of the five figures.  Throws ConfigError for unknown names.
RunConfig preset(const std::string& name);

/// JSON text of the full config (every field).
std::string to_json_text(const RunConfig& config, int indent = 2);

/// Parses JSON text.  Missing keys take the values of `base`; unknown keys,
/// wrong types and invalid values raise ConfigError with the line number.
RunConfig parse_config(const std::string& text, const RunConfig& base = RunConfig{});

RunConfig load_config(const std::string& path, const RunConfig& base = RunConfig{});

std::string momentum_mode_name(MomentumMode m);
MomentumMode parse_momentum_mode(const std::string& name);

}  // namespace psmc
