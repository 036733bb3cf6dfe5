#include "psmc/run_config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace psmc {

using nlohmann::json;

ConfigError::ConfigError(const std::string& what, int line)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
      line_(line) {}

void RunConfig::validate() const {
  try {
    ModelParams m = model;
    for (double b : betas) {
      m.beta = b;
      m.validate();
    }
    engine.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (betas.empty()) throw ConfigError("beta list is empty");
  for (double b : density_betas)
    if (std::find(betas.begin(), betas.end(), b) == betas.end())
      throw ConfigError("density beta " + std::to_string(b) + " is not in the beta list");
  if (l_max < 1) throw ConfigError("l_max must be >= 1");
  if (output_dir.empty()) throw ConfigError("output_dir is empty");
}

std::vector<std::string> preset_names() { return {"fig1", "fig2", "fig3", "fig4", "fig5"}; }

RunConfig preset(const std::string& name) {
  RunConfig c;
  c.preset = name;
  c.model.n_particles = 4;
  c.engine.sweeps = 1'000'000;
  if (name == "fig1") {
    c.model.lattice_spacing = 1.0;
    c.model.kappa = 1.0;
    c.model.lambda_nn = 1.0;
    c.l_max = 10000;
    c.betas = {0.1, 0.2, 0.3, 0.5, 0.7, 1.0, 1.5, 2.0, 3.0, 4.0, 5.0, 6.0, 8.0, 10.0};
  } else if (name == "fig2" || name == "fig3") {
    c.model.lattice_spacing = 1.0;
    c.model.kappa = 0.0;
    c.model.lambda_nn = 0.02;
    c.l_max = 20000;
    if (name == "fig2")
      c.betas = {0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.7, 1.9, 2.1, 2.3, 2.5, 3.0, 4.0, 5.0};
    else
      c.betas = {2.0};
  } else if (name == "fig4" || name == "fig5") {
    c.model.lattice_spacing = 0.1;
    c.model.kappa = 0.0;
    c.model.lambda_nn = 1.0;
    c.l_max = 20000;
    if (name == "fig4")
      c.betas = {0.3, 0.5, 0.6, 0.65, 0.7, 0.75, 0.8, 0.9, 1.0, 1.5, 2.0, 3.0, 5.0, 10.0};
    else
      c.betas = {1.0};
  } else {
    throw ConfigError("unknown preset '" + name + "'");
  }
  if (name == "fig1" || name == "fig2" || name == "fig4") c.density_betas = {c.betas.back()};
  c.output_dir = "out/" + name;
  return c;
}

std::string momentum_mode_name(MomentumMode m) {
  return m == MomentumMode::Analytic ? "analytic" : "sampled";
}

MomentumMode parse_momentum_mode(const std::string& name) {
  if (name == "analytic") return MomentumMode::Analytic;
  if (name == "sampled") return MomentumMode::Sampled;
  throw ConfigError("momentum must be 'analytic' or 'sampled', got '" + name + "'");
}

namespace {

json to_json(const RunConfig& c) {
  const auto& m = c.model;
  const auto& e = c.engine;
  return json{
      {"preset", c.preset},
      {"model",
       {{"n_particles", m.n_particles},
        {"lattice_spacing", m.lattice_spacing},
        {"kappa", m.kappa},
        {"lambda_nn", m.lambda_nn},
        {"mass", m.mass},
        {"omega_lj", m.omega_lj},
        {"hbar", m.hbar}}},
      {"betas", c.betas},
      {"density_betas", c.density_betas},
      {"sampling",
       {{"sweeps", e.sweeps},
        {"equilibration_fraction", e.equilibration_fraction},
        {"blocks", e.blocks},
        {"chains", e.chains},
        {"seed", e.seed},
        {"measure_every", e.measure_every},
        {"initial_step", e.initial_step}}},
      {"estimator",
       {{"n_max", e.commutation.n_max},
        {"q_cut", e.commutation.q_cut},
        {"dm_cap", e.dm_cap},
        {"momentum", momentum_mode_name(e.momentum)}}},
      {"histogram", {{"bins_per_spacing", e.bins_per_spacing}}},
      {"oracle", {{"l_max", c.l_max}}},
      {"output_dir", c.output_dir},
  };
}

int line_of_offset(const std::string& text, std::size_t offset) {
  offset = std::min(offset, text.size());
  return 1 + static_cast<int>(std::count(text.begin(), text.begin() + offset, '\n'));
}

// Line of the first occurrence of "key" used as an object key; 0 when absent.
int line_of_key(const std::string& text, const std::string& key) {
  const std::string quoted = "\"" + key + "\"";
  std::size_t pos = 0;
  while ((pos = text.find(quoted, pos)) != std::string::npos) {
    std::size_t after = pos + quoted.size();
    while (after < text.size() && std::isspace(static_cast<unsigned char>(text[after]))) ++after;
    if (after < text.size() && text[after] == ':') return line_of_offset(text, pos);
    pos = after;
  }
  return 0;
}

class Reader {
 public:
  explicit Reader(const std::string& text) : text_(text) {}

  void check_keys(const json& obj, const std::string& where,
                  std::initializer_list<const char*> allowed) const {
    if (!obj.is_object()) throw ConfigError(where + " must be an object", line_of_key(text_, where));
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      const bool ok = std::any_of(allowed.begin(), allowed.end(),
                                  [&](const char* a) { return it.key() == a; });
      if (!ok)
        throw ConfigError("unknown key '" + it.key() + "' in " + where,
                          line_of_key(text_, it.key()));
    }
  }

  template <class T>
  void get(const json& obj, const char* key, T& out) const {
    auto it = obj.find(key);
    if (it == obj.end()) return;
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!it->is_number()) throw std::invalid_argument("expected a number");
      } else if constexpr (std::is_integral_v<T>) {
        if (!it->is_number_integer()) throw std::invalid_argument("expected an integer");
        if constexpr (std::is_unsigned_v<T>)
          if (it->is_number_integer() && !it->is_number_unsigned())
            throw std::invalid_argument("expected a non-negative integer");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!it->is_string()) throw std::invalid_argument("expected a string");
      } else {
        if (!it->is_array()) throw std::invalid_argument("expected an array of numbers");
        for (const auto& v : *it)
          if (!v.is_number()) throw std::invalid_argument("expected an array of numbers");
      }
      out = it->template get<T>();
    } catch (const std::exception& e) {
      throw ConfigError("'" + std::string(key) + "': " + e.what(), line_of_key(text_, key));
    }
  }

  int line(const std::string& key) const { return line_of_key(text_, key); }

 private:
  const std::string& text_;
};

}  // namespace

std::string to_json_text(const RunConfig& config, int indent) {
  return to_json(config).dump(indent);
}

RunConfig parse_config(const std::string& text, const RunConfig& base) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what(),
                      line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  Reader r(text);
  r.check_keys(doc, "config",
               {"preset", "model", "betas", "density_betas", "sampling", "estimator",
                "histogram", "oracle", "output_dir"});
  RunConfig c = base;
  r.get(doc, "preset", c.preset);
  r.get(doc, "betas", c.betas);
  r.get(doc, "density_betas", c.density_betas);
  r.get(doc, "output_dir", c.output_dir);
  if (doc.contains("model")) {
    const auto& m = doc["model"];
    r.check_keys(m, "model",
                 {"n_particles", "lattice_spacing", "kappa", "lambda_nn", "mass", "omega_lj",
                  "hbar"});
    r.get(m, "n_particles", c.model.n_particles);
    r.get(m, "lattice_spacing", c.model.lattice_spacing);
    r.get(m, "kappa", c.model.kappa);
    r.get(m, "lambda_nn", c.model.lambda_nn);
    r.get(m, "mass", c.model.mass);
    r.get(m, "omega_lj", c.model.omega_lj);
    r.get(m, "hbar", c.model.hbar);
  }
  if (doc.contains("sampling")) {
    const auto& s = doc["sampling"];
    r.check_keys(s, "sampling",
                 {"sweeps", "equilibration_fraction", "blocks", "chains", "seed",
                  "measure_every", "initial_step"});
    r.get(s, "sweeps", c.engine.sweeps);
    r.get(s, "equilibration_fraction", c.engine.equilibration_fraction);
    r.get(s, "blocks", c.engine.blocks);
    r.get(s, "chains", c.engine.chains);
    r.get(s, "seed", c.engine.seed);
    r.get(s, "measure_every", c.engine.measure_every);
    r.get(s, "initial_step", c.engine.initial_step);
  }
  if (doc.contains("estimator")) {
    const auto& e = doc["estimator"];
    r.check_keys(e, "estimator", {"n_max", "q_cut", "dm_cap", "momentum"});
    r.get(e, "n_max", c.engine.commutation.n_max);
    r.get(e, "q_cut", c.engine.commutation.q_cut);
    r.get(e, "dm_cap", c.engine.dm_cap);
    std::string mode = momentum_mode_name(c.engine.momentum);
    r.get(e, "momentum", mode);
    try {
      c.engine.momentum = parse_momentum_mode(mode);
    } catch (const ConfigError& err) {
      throw ConfigError(err.what(), r.line("momentum"));
    }
  }
  if (doc.contains("histogram")) {
    const auto& h = doc["histogram"];
    r.check_keys(h, "histogram", {"bins_per_spacing"});
    r.get(h, "bins_per_spacing", c.engine.bins_per_spacing);
  }
  if (doc.contains("oracle")) {
    const auto& o = doc["oracle"];
    r.check_keys(o, "oracle", {"l_max"});
    r.get(o, "l_max", c.l_max);
  }
  try {
    c.validate();
  } catch (const ConfigError& err) {
    // Point at the most likely offending key when the message names one.
    int line = 0;
    const std::string msg = err.what();
    for (const char* key : {"betas", "density_betas", "n_particles", "lattice_spacing", "kappa",
                            "lambda_nn", "sweeps", "blocks", "chains", "n_max", "q_cut",
                            "dm_cap", "l_max", "equilibration_fraction", "measure_every"}) {
      const std::string k = key;
      std::string plain = k;
      std::replace(plain.begin(), plain.end(), '_', ' ');
      const bool beta_msg = k == "betas" && msg.find("beta") != std::string::npos &&
                            msg.find("density") == std::string::npos;
      if (beta_msg || msg.find(k) != std::string::npos || msg.find(plain) != std::string::npos) {
        line = r.line(k);
        if (line > 0) break;
      }
    }
    throw ConfigError(msg, line);
  }
  return c;
}

RunConfig load_config(const std::string& path, const RunConfig& base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), base);
}

}  // namespace psmc
