#pragma once

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "foecm/identifiability.hpp"
#include "foecm/precision.hpp"

namespace foecm::cli {

/**
 * Settings shared by all subcommands.  Resolution order is: struct
 * defaults, then a JSON config file, then FOECM_* environment
 * variables, then explicit flags (strongest).  The binary front end
 * performs that layering; the cmd_* functions below just consume the
 * final values.
 */
struct RunConfig {
  int digits = 60;                  ///< working precision, >= 30
  int max_iterations = 500;         ///< root-finder budget
  std::string root_tolerance;       ///< decimal string; empty = 10^(-0.8*digits)
  std::string verification_tolerance = "1e-12";
  std::string ts;                   ///< sampling period override; empty = input value
  int horizon = 100;                ///< GL horizon for generated models
  std::uint64_t seed = 1;           ///< sweep RNG seed
  int samples = 100;                ///< sweep draw count
  int workers = 1;                  ///< sweep worker threads
  std::string out;                  ///< output file; empty = stdout only
  std::string grid_file;            ///< spectra: explicit grid (JSON)
  std::string omega_min = "1e-3";   ///< spectra: default grid start
  std::string omega_max = "1e4";    ///< spectra: default grid end
  int points = 200;                 ///< spectra: default grid size
  std::vector<int> legacy_horizons = {10, 20, 50, 100};

  /**
   * Uniform draw ranges of the Monte-Carlo sweep as {low, high} pairs
   * in draw order: r_inf, r1, c1, alpha1, c2, alpha2.  low <= high is
   * required; a point range pins that parameter.
   */
  std::array<std::pair<double, double>, 6> sweep_ranges = {{
      {0.01, 0.2}, {0.05, 5.0}, {1.0, 20.0}, {0.1, 0.9}, {100.0, 500.0}, {0.1, 0.9},
  }};
};

/**
 * Overlays settings from a JSON config file onto config.  Unknown
 * keys are rejected so typos fail loudly.
 *
 * @throws ParseError on malformed JSON or an unknown/ill-typed key.
 */
void load_run_config(RunConfig& config, const std::string& path);

/** Builds the precision context the config describes. */
ContextPtr make_context(const RunConfig& config);

/** Exit code a verdict maps to: 0, 2, 3, 4 in declaration order. */
int verdict_exit_code(Verdict verdict);

/** Exit code a library error maps to (65 input, 70 numeric/internal). */
int error_exit_code(const std::exception& error);

/**
 * analyze: decides identifiability of a transfer function, prints a
 * summary, optionally writes the full report to config.out.  Exactly
 * one input form must be given: a transfer-function file (tf_path) or
 * a parameters file (params_path) whose model is expanded first.
 * Returns the verdict exit code.
 */
int cmd_analyze(const RunConfig& config, const std::string& tf_path,
                const std::string& params_path, std::ostream& out);

/**
 * roundtrip: builds the transfer function of the circuit in
 * params_path, analyzes it, and prints how precisely the accepted
 * candidate reproduces the input parameters.  A report written to
 * config.out carries the per-parameter relative recovery errors.
 * Returns the verdict exit code.
 */
int cmd_roundtrip(const RunConfig& config, const std::string& params_path, std::ostream& out);

/**
 * sweep: draws config.samples circuits uniformly from the study
 * ranges, analyzes each, and emits one CSV row per draw (to
 * config.out when set, otherwise to out).  Draws are generated in a
 * single seeded pass, so results are identical for any worker count.
 * Returns 0 when every draw is globally identifiable, 2 when some
 * draw is not, 70 when any draw failed internally.
 */
int cmd_sweep(const RunConfig& config, std::ostream& out);

/**
 * spectra: evaluates the impedance of the circuit in params_path over
 * a frequency grid and emits CSV.  Returns 0.
 */
int cmd_spectra(const RunConfig& config, const std::string& params_path, std::ostream& out);

/**
 * legacy: prints the residuals of the classical low-order coefficient
 * equations for the circuit in params_path across config.legacy_horizons,
 * together with the vanishing |g0| that makes them unusable.  Returns 0.
 */
int cmd_legacy(const RunConfig& config, const std::string& params_path, std::ostream& out);

}  // namespace foecm::cli
