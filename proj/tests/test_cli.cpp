#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "foecm/cli.hpp"
#include "foecm/errors.hpp"
#include "foecm/gl_model.hpp"
#include "foecm/io.hpp"

#include "support.hpp"

using namespace foecm;
using foecm::cli::RunConfig;
using testsupport::ctx60;
using testsupport::reference_cell;
using testsupport::TempFile;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/** Writes the reference cell at the given horizon to a params file. */
std::string make_params_file(const TempFile& file, int horizon) {
  write_params_file(reference_cell(ctx60(), horizon), file.path());
  return file.path();
}

}  // namespace

TEST_CASE("run configuration defaults match the documented values") {
  const RunConfig c;
  CHECK(c.digits == 60);
  CHECK(c.max_iterations == 500);
  CHECK(c.root_tolerance.empty());
  CHECK(c.verification_tolerance == "1e-12");
  CHECK(c.ts.empty());
  CHECK(c.horizon == 100);
  CHECK(c.seed == 1);
  CHECK(c.samples == 100);
  CHECK(c.workers == 1);
  CHECK(c.out.empty());
  CHECK(c.grid_file.empty());
  CHECK(c.omega_min == "1e-3");
  CHECK(c.omega_max == "1e4");
  CHECK(c.points == 200);
  CHECK(c.legacy_horizons == std::vector<int>{10, 20, 50, 100});
  CHECK(c.sweep_ranges[0] == std::pair<double, double>{0.01, 0.2});
  CHECK(c.sweep_ranges[3] == std::pair<double, double>{0.1, 0.9});
  CHECK(c.sweep_ranges[4] == std::pair<double, double>{100.0, 500.0});
}

TEST_CASE("config files overlay onto the defaults") {
  TempFile file("config_overlay.json");
  write_text(file.path(), R"({
    "digits": 40,
    "max_iterations": 250,
    "root_tolerance": 1e-25,
    "seed": 42,
    "samples": 7,
    "workers": 3,
    "ts": "0.002",
    "horizon": 64,
    "out": "somewhere.json",
    "grid_file": "grid.json",
    "omega_min": "1e-2",
    "omega_max": 100,
    "points": 31,
    "legacy_horizons": [8, 16],
    "sweep_ranges": {"alpha1": [0.3, 0.3], "c2": [200, 300]}
  })");

  RunConfig c;
  cli::load_run_config(c, file.path());
  CHECK(c.digits == 40);
  CHECK(c.max_iterations == 250);
  CHECK(c.root_tolerance == "1e-25");
  CHECK(c.seed == 42);
  CHECK(c.samples == 7);
  CHECK(c.workers == 3);
  CHECK(c.ts == "0.002");
  CHECK(c.horizon == 64);
  CHECK(c.out == "somewhere.json");
  CHECK(c.grid_file == "grid.json");
  CHECK(c.omega_min == "1e-2");
  CHECK(c.omega_max == "100");
  CHECK(c.points == 31);
  CHECK(c.legacy_horizons == std::vector<int>{8, 16});
  CHECK(c.sweep_ranges[3] == std::pair<double, double>{0.3, 0.3});  // point range
  CHECK(c.sweep_ranges[4] == std::pair<double, double>{200.0, 300.0});
  CHECK(c.sweep_ranges[0] == std::pair<double, double>{0.01, 0.2});  // untouched

  // defaults survive when the file sets nothing
  RunConfig untouched;
  write_text(file.path(), "{}");
  cli::load_run_config(untouched, file.path());
  CHECK(untouched.digits == 60);
}

TEST_CASE("config files fail loudly on typos and bad types") {
  TempFile file("config_bad.json");
  RunConfig c;

  write_text(file.path(), R"({"digit": 40})");
  CHECK_THROWS_AS(cli::load_run_config(c, file.path()), ParseError);

  write_text(file.path(), R"({"digits": "forty"})");
  CHECK_THROWS_AS(cli::load_run_config(c, file.path()), ParseError);

  write_text(file.path(), R"({"seed": -1})");
  CHECK_THROWS_AS(cli::load_run_config(c, file.path()), ParseError);

  write_text(file.path(), R"({"out": 5})");
  CHECK_THROWS_AS(cli::load_run_config(c, file.path()), ParseError);

  write_text(file.path(), R"({"legacy_horizons": [10, "x"]})");
  CHECK_THROWS_AS(cli::load_run_config(c, file.path()), ParseError);

  write_text(file.path(), R"({"sweep_ranges": {"r2": [1, 2]}})");
  CHECK_THROWS_AS(cli::load_run_config(c, file.path()), ParseError);

  write_text(file.path(), R"({"sweep_ranges": {"r1": [1]}})");
  CHECK_THROWS_AS(cli::load_run_config(c, file.path()), ParseError);

  write_text(file.path(), R"({"sweep_ranges": {"r1": [2, 1]}})");
  CHECK_THROWS_AS(cli::load_run_config(c, file.path()), ParseError);

  write_text(file.path(), R"([1])");
  CHECK_THROWS_AS(cli::load_run_config(c, file.path()), ParseError);

  write_text(file.path(), "{ nope");
  CHECK_THROWS_AS(cli::load_run_config(c, file.path()), ParseError);

  CHECK_THROWS_AS(cli::load_run_config(c, testsupport::temp_path("missing_config.json")),
                  ParseError);
}

TEST_CASE("make_context passes the precision knobs through") {
  RunConfig c;
  c.digits = 40;
  c.max_iterations = 123;
  const ContextPtr plain = cli::make_context(c);
  CHECK(plain->decimal_digits() == 40);
  CHECK(plain->max_iterations() == 123);

  c.root_tolerance = "1e-20";
  const ContextPtr tuned = cli::make_context(c);
  tuned->activate();
  CHECK(tuned->root_tolerance() == Real("1e-20"));
}

TEST_CASE("verdicts and errors map onto the documented exit codes") {
  CHECK(cli::verdict_exit_code(Verdict::GloballyIdentifiable) == 0);
  CHECK(cli::verdict_exit_code(Verdict::Identifiable) == 2);
  CHECK(cli::verdict_exit_code(Verdict::Unidentifiable) == 3);
  CHECK(cli::verdict_exit_code(Verdict::NoValidSolution) == 4);

  CHECK(cli::error_exit_code(ParseError("x")) == 65);
  CHECK(cli::error_exit_code(DomainError("x")) == 65);
  CHECK(cli::error_exit_code(ConvergenceError("x")) == 70);
  CHECK(cli::error_exit_code(DegenerateStructureError("x")) == 70);
  CHECK(cli::error_exit_code(std::runtime_error("x")) == 70);
}

TEST_CASE("analyze consumes a transfer-function or a parameters file") {
  const ContextPtr ctx = ctx60();
  const ModelParams cell = reference_cell(ctx, 10);
  const MonicTF tf = expand_monic_tf(build_gl_series(cell));

  TempFile tf_file("cli_tf.json");
  write_tf_file(tf, cell.ts, tf_file.path());
  TempFile params_file("cli_params.json");
  write_params_file(cell, params_file.path());

  RunConfig config;
  std::ostringstream out;
  CHECK(cli::cmd_analyze(config, tf_file.path(), "", out) == 0);
  CHECK(out.str().find("verdict: GloballyIdentifiable (accepted candidates: 1)") !=
        std::string::npos);
  CHECK(out.str().find("octic coefficients (ascending):") != std::string::npos);
  CHECK(out.str().find("Accepted") != std::string::npos);

  std::ostringstream out2;
  CHECK(cli::cmd_analyze(config, "", params_file.path(), out2) == 0);
  CHECK(out2.str().find("verdict: GloballyIdentifiable") != std::string::npos);

  // exactly one input form is allowed
  std::ostringstream sink;
  CHECK_THROWS_AS(cli::cmd_analyze(config, "", "", sink), DomainError);
  CHECK_THROWS_AS(cli::cmd_analyze(config, tf_file.path(), params_file.path(), sink),
                  DomainError);
}

TEST_CASE("analyze writes the full report when an output path is set") {
  const ContextPtr ctx = ctx60();
  const ModelParams cell = reference_cell(ctx, 10);
  TempFile params_file("cli_params_out.json");
  write_params_file(cell, params_file.path());
  TempFile report_file("cli_report.json");

  RunConfig config;
  config.out = report_file.path();
  std::ostringstream out;
  CHECK(cli::cmd_analyze(config, "", params_file.path(), out) == 0);
  CHECK(out.str().find("report written to " + report_file.path()) != std::string::npos);

  const std::string report = read_text(report_file.path());
  CHECK(report.find("\"verdict\": \"GloballyIdentifiable\"") != std::string::npos);
  CHECK(report.find("\"timings\"") != std::string::npos);
}

TEST_CASE("analyze exit codes follow the verdict") {
  const ContextPtr ctx = ctx60();
  const ModelParams cell = reference_cell(ctx, 10);
  MonicTF tf = expand_monic_tf(build_gl_series(cell));

  RunConfig config;
  std::ostringstream sink;

  // a loose verification tolerance accepts the shadow candidate: finite ambiguity
  RunConfig loose = config;
  loose.verification_tolerance = "1";
  TempFile params_file("cli_params_loose.json");
  write_params_file(cell, params_file.path());
  CHECK(cli::cmd_analyze(loose, "", params_file.path(), sink) == 2);

  // a perturbed transfer function loses every candidate
  tf.g[19] *= Real("1.01");
  TempFile broken_file("cli_tf_broken.json");
  write_tf_file(tf, cell.ts, broken_file.path());
  CHECK(cli::cmd_analyze(config, broken_file.path(), "", sink) == 4);

  // tolerance strings are validated before any work happens
  RunConfig bad = config;
  bad.verification_tolerance = "nope";
  CHECK_THROWS_AS(cli::cmd_analyze(bad, broken_file.path(), "", sink), ParseError);
  bad.verification_tolerance = "-1";
  CHECK_THROWS_AS(cli::cmd_analyze(bad, broken_file.path(), "", sink), DomainError);
}

TEST_CASE("roundtrip reports the recovery precision of the accepted candidate") {
  TempFile params_file("cli_roundtrip.json");
  make_params_file(params_file, 10);
  TempFile report_file("cli_roundtrip_report.json");

  RunConfig config;
  config.out = report_file.path();
  std::ostringstream out;
  CHECK(cli::cmd_roundtrip(config, params_file.path(), out) == 0);
  CHECK(out.str().find("parameter recovery (accepted candidate closest to the input):") !=
        std::string::npos);
  CHECK(out.str().find("alpha1: rel err") != std::string::npos);
  CHECK(out.str().find("max:") != std::string::npos);

  const std::string report = read_text(report_file.path());
  CHECK(report.find("\"recovery\"") != std::string::npos);
  CHECK(report.find("\"max\"") != std::string::npos);
}

TEST_CASE("sweep output is identical for any worker count") {
  RunConfig config;
  config.samples = 5;
  config.horizon = 20;
  config.seed = 2025;

  TempFile csv1("sweep_w1.csv");
  TempFile csv3("sweep_w3.csv");

  config.workers = 1;
  config.out = csv1.path();
  std::ostringstream out1;
  CHECK(cli::cmd_sweep(config, out1) == 0);
  CHECK(out1.str().find("GloballyIdentifiable: 5") != std::string::npos);

  config.workers = 3;
  config.out = csv3.path();
  std::ostringstream out3;
  CHECK(cli::cmd_sweep(config, out3) == 0);

  const std::string rows1 = read_text(csv1.path());
  CHECK(rows1 == read_text(csv3.path()));
  CHECK(rows1.rfind("draw,r_inf,r1,c1,alpha1,c2,alpha2,verdict,accepted_count,"
                    "max_param_rel_error\n", 0) == 0);
  CHECK(std::count(rows1.begin(), rows1.end(), '\n') == 6);  // header + 5 draws
}

TEST_CASE("point ranges pin every draw to the same circuit") {
  RunConfig config;
  config.samples = 3;
  config.horizon = 20;
  config.sweep_ranges = {{{0.01, 0.01},
                          {0.2, 0.2},
                          {3.0, 3.0},
                          {0.8, 0.8},
                          {400.0, 400.0},
                          {0.5, 0.5}}};

  std::ostringstream out;
  CHECK(cli::cmd_sweep(config, out) == 0);

  // all three rows carry the same parameters and verdict
  std::istringstream lines(out.str());
  std::string line;
  std::vector<std::string> rows;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.find("GloballyIdentifiable") != std::string::npos &&
        line.find(',') != std::string::npos) {
      rows.push_back(line.substr(line.find(',')));  // drop the draw index
    }
  }
  REQUIRE(rows.size() == 3);
  CHECK(rows[0] == rows[1]);
  CHECK(rows[1] == rows[2]);
  // pinned draws surface in the row (columns that render exactly under max precision)
  CHECK(rows[0].rfind(",0.01,", 0) == 0);
  CHECK(rows[0].find(",400,0.5,GloballyIdentifiable,1,") != std::string::npos);
}

TEST_CASE("sweep validates its knobs before drawing") {
  std::ostringstream sink;
  RunConfig config;

  config.samples = 0;
  CHECK_THROWS_AS(cli::cmd_sweep(config, sink), DomainError);

  config.samples = 1;
  config.workers = 0;
  CHECK_THROWS_AS(cli::cmd_sweep(config, sink), DomainError);

  config.workers = 1;
  config.sweep_ranges[2] = {5.0, 4.0};
  CHECK_THROWS_AS(cli::cmd_sweep(config, sink), DomainError);
}

TEST_CASE("spectra sweeps a default or explicit frequency grid") {
  TempFile params_file("cli_spectra_params.json");
  make_params_file(params_file, 10);

  RunConfig config;
  config.points = 5;
  config.omega_min = "1";
  config.omega_max = "100";
  std::ostringstream out;
  CHECK(cli::cmd_spectra(config, params_file.path(), out) == 0);
  const std::string csv = out.str();
  CHECK(csv.rfind("omega,z_re,z_im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);

  TempFile grid_file("cli_grid.json");
  write_text(grid_file.path(), R"(["1", "10", "100"])");
  config.grid_file = grid_file.path();
  std::ostringstream out2;
  CHECK(cli::cmd_spectra(config, params_file.path(), out2) == 0);
  const std::string csv2 = out2.str();
  CHECK(std::count(csv2.begin(), csv2.end(), '\n') == 4);

  TempFile csv_file("cli_spectrum.csv");
  config.out = csv_file.path();
  std::ostringstream out3;
  CHECK(cli::cmd_spectra(config, params_file.path(), out3) == 0);
  CHECK(out3.str().find("spectrum with 3 points written to") != std::string::npos);
  CHECK(read_text(csv_file.path()).rfind("omega,z_re,z_im\n", 0) == 0);
}

TEST_CASE("legacy prints one residual row per horizon") {
  TempFile params_file("cli_legacy_params.json");
  make_params_file(params_file, 10);

  RunConfig config;
  config.legacy_horizons = {10, 20};
  std::ostringstream out;
  CHECK(cli::cmd_legacy(config, params_file.path(), out) == 0);

  const std::string text = out.str();
  CHECK(text.find("|g0|") != std::string::npos);
  CHECK(text.find("|g1|") != std::string::npos);
  CHECK(text.find("|g2|") != std::string::npos);
  CHECK(text.find("residual1") != std::string::npos);
  CHECK(text.find("residual2") != std::string::npos);
  CHECK(text.find("\n10 ") != std::string::npos);
  CHECK(text.find("\n20 ") != std::string::npos);
  CHECK(text.find("identification must instead use the leading coefficients") !=
        std::string::npos);

  config.legacy_horizons = {};
  std::ostringstream sink;
  CHECK_THROWS_AS(cli::cmd_legacy(config, params_file.path(), sink), DomainError);
}
