#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "foecm/cli.hpp"
#include "foecm/errors.hpp"

namespace {

constexpr int kUsageError = 64;

// The config file is applied before CLI11 sees the remaining flags,
// so file values act as defaults and explicit flags (or FOECM_*
// environment variables) override them.
std::string find_config_path(int argc, char** argv) {
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--config" && i + 1 < argc) {
      return argv[i + 1];
    }
    if (arg.rfind("--config=", 0) == 0) {
      return arg.substr(9);
    }
  }
  if (const char* env = std::getenv("FOECM_CONFIG")) {
    return env;
  }
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  foecm::cli::RunConfig config;

  const std::string config_path = find_config_path(argc, argv);
  if (!config_path.empty()) {
    try {
      foecm::cli::load_run_config(config, config_path);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return foecm::cli::error_exit_code(e);
    }
  }

  CLI::App app{"Structural identifiability of the two-CPE fractional-order equivalent circuit"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_help_all_flag("--help-all", "print help for every subcommand");

  std::string config_path_opt;  // parsed again so CLI11 validates/documents it
  app.add_option("--config", config_path_opt, "JSON config file applied before flags")
      ->envname("FOECM_CONFIG");
  app.add_option("--digits", config.digits, "working precision in decimal digits (>= 30)")
      ->envname("FOECM_DIGITS")
      ->capture_default_str();
  app.add_option("--max-iterations", config.max_iterations, "root-finder iteration budget")
      ->envname("FOECM_MAX_ITERATIONS")
      ->capture_default_str();
  app.add_option("--root-tolerance", config.root_tolerance,
                 "root-finder stopping tolerance (default 10^(-0.8*digits))")
      ->envname("FOECM_ROOT_TOLERANCE");
  app.add_option("--verification-tolerance", config.verification_tolerance,
                 "acceptance threshold for the rebuilt-series mismatch")
      ->envname("FOECM_VERIFICATION_TOLERANCE")
      ->capture_default_str();
  app.add_option("--ts", config.ts, "sampling period override (decimal string)")
      ->envname("FOECM_TS");
  app.add_option("--T,--horizon", config.horizon, "GL memory horizon for generated models")
      ->envname("FOECM_HORIZON")
      ->capture_default_str();
  app.add_option("--out", config.out, "write full-precision output to this file")
      ->envname("FOECM_OUT");

  std::string tf_path;
  std::string params_path;

  CLI::App* analyze = app.add_subcommand(
      "analyze", "decide identifiability of a transfer function or a known circuit");
  CLI::Option* analyze_tf = analyze->add_option("--tf", tf_path, "transfer-function file")
                                ->check(CLI::ExistingFile);
  analyze->add_option("--params", params_path, "circuit parameter file (expanded first)")
      ->check(CLI::ExistingFile)
      ->excludes(analyze_tf);

  CLI::App* roundtrip = app.add_subcommand(
      "roundtrip", "build the transfer function of a known circuit, then identify it back");
  roundtrip->add_option("--params", params_path, "circuit parameter file")
      ->required()
      ->check(CLI::ExistingFile);

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Monte-Carlo identifiability study over the published parameter ranges");
  sweep->add_option("--samples", config.samples, "number of draws")
      ->envname("FOECM_SAMPLES")
      ->capture_default_str();
  sweep->add_option("--seed", config.seed, "RNG seed")
      ->envname("FOECM_SEED")
      ->capture_default_str();
  sweep->add_option("--workers", config.workers, "worker threads")
      ->envname("FOECM_WORKERS")
      ->capture_default_str();

  CLI::App* spectra = app.add_subcommand(
      "spectra", "evaluate the circuit impedance over a frequency grid (CSV)");
  spectra->add_option("--params", params_path, "circuit parameter file")
      ->required()
      ->check(CLI::ExistingFile);
  spectra->add_option("--grid", config.grid_file, "JSON file with explicit frequencies")
      ->check(CLI::ExistingFile);
  spectra->add_option("--omega-min", config.omega_min, "default grid start (rad/s)")
      ->capture_default_str();
  spectra->add_option("--omega-max", config.omega_max, "default grid end (rad/s)")
      ->capture_default_str();
  spectra->add_option("--points", config.points, "default grid size")
      ->capture_default_str();

  CLI::App* legacy = app.add_subcommand(
      "legacy", "show how the classical low-order coefficient equations degrade with T");
  legacy->add_option("--params", params_path, "circuit parameter file")
      ->required()
      ->check(CLI::ExistingFile);
  legacy->add_option("--horizons", config.legacy_horizons, "horizons to evaluate")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (analyze->parsed()) {
      return foecm::cli::cmd_analyze(config, tf_path, params_path, std::cout);
    }
    if (roundtrip->parsed()) {
      return foecm::cli::cmd_roundtrip(config, params_path, std::cout);
    }
    if (sweep->parsed()) {
      return foecm::cli::cmd_sweep(config, std::cout);
    }
    if (spectra->parsed()) {
      return foecm::cli::cmd_spectra(config, params_path, std::cout);
    }
    if (legacy->parsed()) {
      return foecm::cli::cmd_legacy(config, params_path, std::cout);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return foecm::cli::error_exit_code(e);
  }
  return kUsageError;
}
