// propp: build presets, run the check suites, emit JSON-lines reports.
// Exit status: 0 all checks pass or are flagged, 1 some check failed, 2 config error.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "prohecke/cli.hpp"

using namespace prohecke;

int main(int argc, char** argv) {
  CLI::App app{"Checks for pro-p Iwahori Hecke algebras and their modules"};
  app.require_subcommand(1);

  std::string d_preset = "SL2";
  int d_p = 3, d_f = 1;
  auto* desc = app.add_subcommand("describe", "Describe a preset: W_0, S_aff, Omega, Z_kappa, parabolics, inventory");
  desc->add_option("--preset", d_preset, "SL2, PGL2, GL2 or SL3");
  desc->add_option("--p", d_p, "residue characteristic");
  desc->add_option("--f", d_f, "residue degree");

  SuiteConfig cfg;
  std::vector<std::string> suites;
  std::string config_path, caps_flag;
  auto* check = app.add_subcommand("check", "Run check suites and write a JSON-lines report");
  check->add_option("--preset", cfg.preset, "SL2, PGL2, GL2 or SL3");
  check->add_option("--p", cfg.p, "residue characteristic");
  check->add_option("--f", cfg.f, "residue degree");
  check->add_option("--suite", suites, "suite ids (repeatable or comma-separated), or all");
  check->add_option("--seed", cfg.seed, "seed for every random choice");
  check->add_option("--out", cfg.output, "report path (default: standard output)");
  check->add_option("--config", config_path, "JSON config file; its fields override flags");
  check->add_option("--caps", caps_flag, "cap overrides, e.g. length=5,orbit=4,dim=64");
  check->add_flag("--timings", cfg.timings, "record wall-clock ms (reports are then not byte-identical)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*desc) {
      std::cout << describe_json(d_preset, d_p, d_f) << '\n';
      return 0;
    }
    cfg.suites = split_list(suites);
    if (!caps_flag.empty()) apply_caps(cfg.caps, caps_flag);
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file " + config_path);
      std::stringstream ss;
      ss << in.rdbuf();
      apply_config_json(cfg, ss.str());
    }
    if (const char* env = std::getenv(kCapsEnv)) apply_caps(cfg.caps, env);
    cfg = normalize(cfg);

    const auto results = run_suites(cfg);
    const std::string report = to_jsonl(results, cfg.timings);
    if (cfg.output.empty()) {
      std::cout << report;
    } else {
      std::ofstream out(cfg.output);
      if (!out) throw ConfigError("cannot write " + cfg.output);
      out << report;
    }
    int n_fail = 0, n_flag = 0;
    for (auto& r : results) {
      n_fail += r.status == "fail";
      n_flag += r.status == "flagged";
    }
    std::cerr << results.size() << " checks, " << n_fail << " failed, " << n_flag << " flagged\n";
    return n_fail ? 1 : 0;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }
}
