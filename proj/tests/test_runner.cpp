#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "psmc/run_config.hpp"
#include "psmc/runner.hpp"

using namespace psmc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::path(PSMC_TEST_TMP) / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const fs::path& p) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  return line;
}

RunConfig tiny(const std::string& name = "fig4") {
  RunConfig c = preset(name);
  c.betas = {0.5, 1.0};
  c.density_betas = {1.0};
  c.engine.sweeps = 4000;
  c.engine.chains = 2;
  c.l_max = 500;
  return c;
}

int run_cli(const std::string& args, const fs::path& log) {
  const std::string cmd =
      std::string("\"") + PSMC_CLI_PATH + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
#ifdef WEXITSTATUS
  return WEXITSTATUS(status);
#else
  return status;
#endif
}

}  // namespace

TEST_SUITE("runner_cli") {
  TEST_CASE("presets carry the figure parameters") {
    const auto f1 = preset("fig1");
    CHECK(f1.model.kappa == 1.0);
    CHECK(f1.model.lambda_nn == 1.0);
    CHECK(f1.model.lattice_spacing == 1.0);
    const auto f2 = preset("fig2");
    CHECK(f2.model.kappa == 0.0);
    CHECK(f2.model.lambda_nn == 0.02);
    CHECK(f2.l_max == 20000);
    const auto f4 = preset("fig4");
    CHECK(f4.model.lambda_nn == 1.0);
    CHECK(f4.model.lattice_spacing == 0.1);
    for (const auto& n : preset_names()) {
      const auto p = preset(n);
      CHECK(p.model.n_particles == 4);
      CHECK(p.model.mass == doctest::Approx(102.0778).epsilon(1e-6));
      CHECK_NOTHROW(p.validate());
    }
    CHECK_THROWS_AS(preset("fig9"), ConfigError);
  }

  TEST_CASE("config round trip") {
    RunConfig c = preset("fig2");
    c.engine.seed = 77;
    c.engine.momentum = MomentumMode::Sampled;
    c.engine.commutation.n_max = 12;
    c.engine.commutation.q_cut = 2.5;
    c.engine.dm_cap = 0;
    c.density_betas = {0.3, 3.0};
    c.output_dir = "somewhere";
    const RunConfig back = parse_config(to_json_text(c));
    CHECK(to_json_text(back) == to_json_text(c));
    CHECK(back.engine.seed == 77);
    CHECK(back.engine.momentum == MomentumMode::Sampled);
    CHECK(back.betas == c.betas);
  }

  TEST_CASE("missing keys inherit the base") {
    const RunConfig base = preset("fig4");
    const RunConfig c = parse_config(R"({"sampling": {"seed": 5}})", base);
    CHECK(c.engine.seed == 5);
    CHECK(c.model.lattice_spacing == 0.1);
    CHECK(c.betas == base.betas);
  }

  TEST_CASE("unknown key reports its line") {
    const std::string text = "{\n  \"model\": {\n    \"kappa\": 1.0,\n    \"kapa\": 2.0\n  }\n}\n";
    try {
      parse_config(text, preset("fig1"));
      FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
      CHECK(e.line() == 4);
      CHECK(std::string(e.what()).find("kapa") != std::string::npos);
    }
  }

  TEST_CASE("invalid values are rejected") {
    const RunConfig base = preset("fig1");
    auto line_of = [&](const std::string& text) {
      try {
        parse_config(text, base);
      } catch (const ConfigError& e) {
        return e.line();
      }
      return -1;
    };
    CHECK(line_of("{\n\"betas\": []\n}") == 2);
    CHECK(line_of("{\n\"betas\": [1.0, -2.0]\n}") == 2);
    CHECK(line_of("{\n\"model\": {\n\"n_particles\": 0\n}\n}") == 3);
    CHECK(line_of("{\n\"model\": {\n\"kappa\": \"one\"\n}\n}") == 3);
    CHECK(line_of("{\n\"estimator\": {\n\"momentum\": \"guess\"\n}\n}") == 3);
    CHECK(line_of("{\n\"sampling\": {\n\"sweeps\": 5\n}\n}") == 3);
    CHECK(line_of("{\n\"model\": {\"kappa\": 0.0, \"lambda_nn\": 0.0}\n}") > 0);
    CHECK(line_of("{ \"betas\": [1.0,\n") == 2);
  }

  TEST_CASE("csv headers carry units") {
    for (const auto& c : energy_csv_columns()) {
      const bool unitless = c == "samples" || c == "acceptance" ||
                            c.ends_with("_denominator") || c.ends_with("_denominator_err") ||
                            c.ends_with("_near_pole");
      if (!unitless) CHECK_MESSAGE(c.ends_with("_hw_lj"), c);
    }
    for (const auto& c : density_csv_columns()) {
      if (c == "beta_hw_lj") continue;
      CHECK_MESSAGE((c == "q_over_re" || c.ends_with("_per_re")), c);
    }
    CHECK(energy_csv_columns().front() == "beta_hw_lj");
  }

  TEST_CASE("emitted files: schema, reproducibility and metadata") {
    const RunConfig c = tiny();
    const auto a = scratch("emit_a");
    const auto b = scratch("emit_b");
    emit_csv(run_sweep(c), a);
    emit_csv(run_sweep(c), b);
    for (const char* f : {"energy_vs_beta.csv", "density_profile.csv"}) {
      REQUIRE(fs::exists(a / f));
      CHECK(slurp(a / f) == slurp(b / f));
    }
    std::string header;
    for (const auto& col : energy_csv_columns()) header += (header.empty() ? "" : ",") + col;
    CHECK(first_line(a / "energy_vs_beta.csv") == header);
    std::ifstream energy(a / "energy_vs_beta.csv");
    std::string line;
    int rows = 0;
    while (std::getline(energy, line)) ++rows;
    CHECK(rows == 3);

    const auto meta = nlohmann::json::parse(slurp(a / "run_metadata.json"));
    CHECK(meta.at("seed") == c.engine.seed);
    CHECK(meta.at("version").get<std::string>() == version_string());
    CHECK(meta.at("wall_seconds").get<double>() >= 0.0);
    // The echo reproduces every field.
    CHECK(to_json_text(parse_config(meta.at("config").dump())) == to_json_text(c));
  }

  TEST_CASE("density temperatures must be simulated") {
    RunConfig c = tiny();
    c.density_betas = {7.0};
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }

  TEST_CASE("unwritable output directory") {
    const auto d = scratch("blocked");
    std::ofstream(d / "file") << "x";
    CHECK_THROWS_AS(emit_csv(run_sweep(tiny()), d / "file" / "sub"), std::runtime_error);
  }

  TEST_CASE("oracle table") {
    const auto rows = oracle_table(preset("fig2").model, {3.0}, 20000);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].exact_truncated == doctest::Approx(1.3707).epsilon(1e-3));
    CHECK(rows[0].exact_closed > rows[0].exact_truncated);
    CHECK(rows[0].classical_limit == doctest::Approx(4.0 / 3.0));
    std::ostringstream out;
    write_oracle_csv(rows, out);
    CHECK(out.str().starts_with("beta_hw_lj,"));
  }

  TEST_CASE("command line") {
    const auto d = scratch("cli");
    const auto log = d / "log.txt";
    CHECK(run_cli("selftest", log) == 0);
    CHECK(slurp(log).find("FAIL") == std::string::npos);

    const auto out = d / "run";
    CHECK(run_cli("run --preset fig1 --beta-list 0.5 2 --sweeps 4000 --chains 2 --seed 3 --quiet --out \"" +
                      out.string() + "\"",
                  log) == 0);
    CHECK(fs::exists(out / "energy_vs_beta.csv"));
    CHECK(fs::exists(out / "run_metadata.json"));
    const auto meta = nlohmann::json::parse(slurp(out / "run_metadata.json"));
    CHECK(meta.at("seed") == 3);
    CHECK(meta.at("config").at("betas") == nlohmann::json{0.5, 2.0});

    CHECK(run_cli("oracle --preset fig1 --lmax 2000", log) == 0);
    CHECK(slurp(log).starts_with("beta_hw_lj,"));

    CHECK(run_cli("run --preset nope", log) != 0);
    std::ofstream(d / "bad.json") << "{\n  \"sampling\": {\n    \"sweps\": 3\n  }\n}\n";
    CHECK(run_cli("run --config \"" + (d / "bad.json").string() + "\"", log) == 2);
    CHECK(slurp(log).find("line 3") != std::string::npos);
  }
}
