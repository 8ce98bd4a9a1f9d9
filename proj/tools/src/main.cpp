#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

using nonlocal::cli::ConfigError;
using nonlocal::cli::RunConfig;

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal Orlicz energies: localization limits, constants and spectra"};
  std::string command;
  std::string config_path;
  std::vector<std::string> overrides;
  std::string output_dir;
  std::string seed;
  app.add_option("command", command, "limit-table | phi-check | knp | rv-index | ineq-suite | eigen-scaling")
      ->required();
  app.add_option("-c,--config", config_path, "INI file with [orlicz] [field] [limit] [quad] [spectrum] [ineq] [run]");
  app.add_option("-s,--set", overrides, "section.key=value, applied after the config file");
  app.add_option("-o,--output-dir", output_dir, "directory for CSV output");
  app.add_option("--seed", seed, "64-bit seed; overrides NONLOCAL_SEED and the config");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return nonlocal::cli::kConfigError;
  }

  try {
    RunConfig cfg;
    if (!config_path.empty()) load_config_file(cfg, config_path);
    cfg.set("run.command", command);
    for (const auto& o : overrides) apply_override(cfg, o);
    if (!output_dir.empty()) cfg.set("run.output_dir", output_dir);
    if (const char* env = std::getenv("NONLOCAL_SEED")) {
      try {
        cfg.set("run.seed", env);
      } catch (const ConfigError&) {
        throw ConfigError("NONLOCAL_SEED", std::string("expected an unsigned 64-bit integer, got '") + env + "'");
      }
    }
    if (!seed.empty()) cfg.set("run.seed", seed);
    cfg.validate();
    return nonlocal::cli::run(cfg, std::cout, std::cerr).exit_code;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return nonlocal::cli::kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return nonlocal::cli::kAssertionFailed;
  }
}
