#include <algorithm>
#include <fstream>
#include <string>
#include <vector>

#include <catch2/catch_amalgamated.hpp>
#include <json.hpp>

#include "foecm/errors.hpp"
#include "foecm/gl_model.hpp"
#include "foecm/identifiability.hpp"
#include "foecm/io.hpp"
#include "foecm/spectra.hpp"

#include "support.hpp"

using namespace foecm;
using nlohmann::ordered_json;
using testsupport::ctx60;
using testsupport::reference_cell;
using testsupport::rel_diff;
using testsupport::TempFile;

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  REQUIRE(out.good());
  out << text;
}

std::vector<std::string> key_order(const ordered_json& j) {
  std::vector<std::string> keys;
  for (auto it = j.begin(); it != j.end(); ++it) {
    keys.push_back(it.key());
  }
  return keys;
}

}  // namespace

TEST_CASE("decimal strings round-trip exactly at working precision") {
  const ContextPtr ctx = ctx60();
  ctx->activate();
  const std::vector<Real> values = {Real(testsupport::kTsText), Real(1) / 3,
                                    Real("-2.5e-40"), Real(0), Real("1e100")};
  for (const Real& x : values) {
    const std::string text = to_decimal_string(x);
    CHECK(parse_real(text, "roundtrip") == x);
  }

  // limited-digit rendering is a rounded, not truncated, approximation
  const Real x("1.23456789");
  CHECK(rel_diff(parse_real(to_decimal_string(x, 4), "rounded"), x) < Real("1e-3"));
}

TEST_CASE("parse_real rejects text that is not a decimal number") {
  ctx60()->activate();
  CHECK_THROWS_AS(parse_real("not-a-number", "field"), ParseError);
  CHECK_THROWS_AS(parse_real("", "field"), ParseError);
  CHECK_THROWS_AS(parse_real("1.2.3", "field"), ParseError);
  CHECK(parse_real("1e-3", "field") == Real("1e-3"));
}

TEST_CASE("circuit parameters survive a file round-trip bit-exactly") {
  const ContextPtr ctx = ctx60();
  const ModelParams original = reference_cell(ctx, 12);
  TempFile file("params_roundtrip.json");

  write_params_file(original, file.path());
  const ModelParams loaded = read_params_file(file.path(), ctx);

  CHECK(loaded.r_inf == original.r_inf);
  CHECK(loaded.r1 == original.r1);
  CHECK(loaded.c1 == original.c1);
  CHECK(loaded.alpha1 == original.alpha1);
  CHECK(loaded.c2 == original.c2);
  CHECK(loaded.alpha2 == original.alpha2);
  CHECK(loaded.ts == original.ts);
  CHECK(loaded.horizon == 12);
  CHECK(loaded.ctx == ctx);
}

TEST_CASE("parameter files accept JSON numbers and decimal strings alike") {
  const ContextPtr ctx = ctx60();
  TempFile file("params_mixed.json");
  write_text(file.path(), R"({
    "r_inf": 0.01, "r1": "0.2", "c1": 3, "alpha1": 0.8,
    "c2": 400, "alpha2": "0.5", "ts": 0.001, "horizon": 12
  })");

  const ModelParams p = read_params_file(file.path(), ctx);
  CHECK(p.r_inf == Real("0.01"));
  CHECK(p.r1 == Real("0.2"));
  CHECK(p.c1 == Real(3));
  CHECK(p.c2 == Real(400));
  CHECK(p.alpha2 == Real("0.5"));
  CHECK(p.horizon == 12);
}

TEST_CASE("parameter files reject missing keys, bad types, and bad values") {
  const ContextPtr ctx = ctx60();
  TempFile file("params_bad.json");

  write_text(file.path(), R"({"r_inf": 0.01})");
  CHECK_THROWS_AS(read_params_file(file.path(), ctx), ParseError);

  write_text(file.path(), R"({
    "r_inf": 0.01, "r1": 0.2, "c1": 3, "alpha1": 0.8,
    "c2": 400, "alpha2": 0.5, "ts": 0.001, "horizon": "12"
  })");
  CHECK_THROWS_AS(read_params_file(file.path(), ctx), ParseError);

  write_text(file.path(), R"({
    "r_inf": 0.01, "r1": -0.2, "c1": 3, "alpha1": 0.8,
    "c2": 400, "alpha2": 0.5, "ts": 0.001, "horizon": 12
  })");
  CHECK_THROWS_AS(read_params_file(file.path(), ctx), DomainError);

  write_text(file.path(), R"([1, 2, 3])");
  CHECK_THROWS_AS(read_params_file(file.path(), ctx), ParseError);

  write_text(file.path(), "{ not json");
  CHECK_THROWS_AS(read_params_file(file.path(), ctx), ParseError);

  CHECK_THROWS_AS(read_params_file(testsupport::temp_path("does_not_exist.json"), ctx),
                  ParseError);
}

TEST_CASE("transfer functions survive a file round-trip bit-exactly") {
  const ContextPtr ctx = ctx60();
  const ModelParams cell = reference_cell(ctx, 8);
  const MonicTF original = expand_monic_tf(build_gl_series(cell));
  TempFile file("tf_roundtrip.json");

  write_tf_file(original, cell.ts, file.path());
  const TFFile loaded = read_tf_file(file.path(), ctx);

  CHECK(loaded.ts == cell.ts);
  CHECK(loaded.tf.horizon() == 8);
  REQUIRE(loaded.tf.f.size() == original.f.size());
  REQUIRE(loaded.tf.g.size() == original.g.size());
  CHECK(loaded.tf.f == original.f);
  CHECK(loaded.tf.g == original.g);
  CHECK(loaded.tf.ctx == ctx);
}

TEST_CASE("transfer-function files default ts to one and validate their shape") {
  const ContextPtr ctx = ctx60();
  TempFile file("tf_shape.json");

  const auto tf_json = [](int f_len, int g_len) {
    ordered_json j;
    j["f"] = ordered_json::array();
    j["g"] = ordered_json::array();
    for (int k = 0; k < f_len; ++k) {
      j["f"].push_back("1");
    }
    for (int k = 0; k < g_len; ++k) {
      j["g"].push_back("0.5");
    }
    return j.dump();
  };

  // minimal valid shape: T = 7, no ts key
  write_text(file.path(), tf_json(17, 16));
  const TFFile minimal = read_tf_file(file.path(), ctx);
  CHECK(minimal.ts == Real(1));
  CHECK(minimal.tf.horizon() == 7);

  write_text(file.path(), tf_json(18, 17));  // even f length
  CHECK_THROWS_AS(read_tf_file(file.path(), ctx), ParseError);

  write_text(file.path(), tf_json(17, 15));  // g is not one shorter
  CHECK_THROWS_AS(read_tf_file(file.path(), ctx), ParseError);

  write_text(file.path(), tf_json(15, 14));  // below the minimum horizon
  CHECK_THROWS_AS(read_tf_file(file.path(), ctx), ParseError);

  write_text(file.path(), R"({"f": "oops", "g": []})");
  CHECK_THROWS_AS(read_tf_file(file.path(), ctx), ParseError);

  write_text(file.path(), R"({"g": []})");
  CHECK_THROWS_AS(read_tf_file(file.path(), ctx), ParseError);
}

TEST_CASE("analysis reports serialize with a deterministic key order") {
  const ContextPtr ctx = ctx60();
  const ModelParams cell = reference_cell(ctx, 10);
  const MonicTF tf = expand_monic_tf(build_gl_series(cell));
  const IdentifiabilityReport report = analyze(tf, cell.ts, AnalyzeOptions::defaults(ctx));

  const ordered_json j = ordered_json::parse(report_to_string(report));
  CHECK(key_order(j) == std::vector<std::string>{"verdict", "accepted_count", "horizon",
                                                 "ts", "exclusion_interval", "octic",
                                                 "candidates", "timings"});
  CHECK(j["verdict"] == "GloballyIdentifiable");
  CHECK(j["accepted_count"] == 1);
  CHECK(j["horizon"] == 10);
  CHECK(j["octic"].size() == 9);
  ctx->activate();
  CHECK(parse_real(j["octic"].back().get<std::string>(), "octic") == Real(1));
  CHECK(j["exclusion_interval"].size() == 2);
  REQUIRE(j["candidates"].size() == 8);
  for (const auto& c : j["candidates"]) {
    CHECK(c.contains("root"));
    CHECK(c.contains("alpha2"));
    CHECK(c.contains("status"));
  }

  // every Real is rendered as a decimal string, so re-parsing is lossless
  ctx->activate();
  const Real ts_back = parse_real(j["ts"].get<std::string>(), "ts");
  CHECK(ts_back == cell.ts);
}

TEST_CASE("round-trip reports append recovery errors before the timings") {
  const ContextPtr ctx = ctx60();
  const ModelParams cell = reference_cell(ctx, 10);
  const MonicTF tf = expand_monic_tf(build_gl_series(cell));
  const IdentifiabilityReport report = analyze(tf, cell.ts, AnalyzeOptions::defaults(ctx));

  const ordered_json j = ordered_json::parse(roundtrip_report_to_string(report, cell));
  const std::vector<std::string> keys = key_order(j);
  REQUIRE(keys.size() >= 2);
  CHECK(keys[keys.size() - 2] == "recovery");
  CHECK(keys.back() == "timings");

  REQUIRE(j["recovery"].is_object());
  CHECK(key_order(j["recovery"]) == std::vector<std::string>{"r_inf", "r1", "c1", "alpha1",
                                                             "c2", "alpha2", "max"});
  ctx->activate();
  CHECK(parse_real(j["recovery"]["max"].get<std::string>(), "max") < Real("1e-8"));

  // when nothing is accepted the recovery block is null
  MonicTF broken = tf;
  broken.g[2 * 10 - 1] *= Real("1.01");
  const IdentifiabilityReport failed =
      analyze(broken, cell.ts, AnalyzeOptions::defaults(ctx));
  REQUIRE(failed.accepted_count == 0);
  const ordered_json jf = ordered_json::parse(roundtrip_report_to_string(failed, cell));
  CHECK(jf["recovery"].is_null());
}

TEST_CASE("report files are written to disk verbatim") {
  const ContextPtr ctx = ctx60();
  const ModelParams cell = reference_cell(ctx, 10);
  const MonicTF tf = expand_monic_tf(build_gl_series(cell));
  const IdentifiabilityReport report = analyze(tf, cell.ts, AnalyzeOptions::defaults(ctx));

  TempFile file("report.json");
  write_report_file(report, file.path());
  std::ifstream in(file.path());
  REQUIRE(in.good());
  const std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  CHECK(content == report_to_string(report));
  CHECK(content.back() == '\n');
}

TEST_CASE("frequency-grid files accept both accepted layouts") {
  const ContextPtr ctx = ctx60();
  TempFile file("grid.json");

  write_text(file.path(), R"([1, "2.5", 100])");
  const std::vector<Real> bare = read_grid_file(file.path(), ctx);
  REQUIRE(bare.size() == 3);
  CHECK(bare[0] == Real(1));
  CHECK(bare[1] == Real("2.5"));
  CHECK(bare[2] == Real(100));

  write_text(file.path(), R"({"grid": ["0.1", "10"]})");
  const std::vector<Real> wrapped = read_grid_file(file.path(), ctx);
  REQUIRE(wrapped.size() == 2);
  CHECK(wrapped[0] == Real("0.1"));

  write_text(file.path(), R"([])");
  CHECK_THROWS_AS(read_grid_file(file.path(), ctx), DomainError);

  write_text(file.path(), R"([1, 0])");
  CHECK_THROWS_AS(read_grid_file(file.path(), ctx), DomainError);

  write_text(file.path(), R"({"frequencies": [1]})");
  CHECK_THROWS_AS(read_grid_file(file.path(), ctx), ParseError);

  write_text(file.path(), R"("1.5")");
  CHECK_THROWS_AS(read_grid_file(file.path(), ctx), ParseError);
}

TEST_CASE("spectra render as CSV with one line per point") {
  const ContextPtr ctx = ctx60();
  const ModelParams cell = reference_cell(ctx, 10);
  const std::vector<ImpedancePoint> points =
      sweep_spectrum(cell, log_grid(Real(1), Real(100), 5));

  const std::string csv = spectrum_to_csv(points);
  CHECK(csv.rfind("omega,z_re,z_im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(csv.find('\n' + to_decimal_string(points[1].omega) + ',') != std::string::npos);

  TempFile file("spectrum.csv");
  write_spectrum_csv(points, file.path());
  std::ifstream in(file.path());
  REQUIRE(in.good());
  const std::string content((std::istreambuf_iterator<char>(in)),
                            std::istreambuf_iterator<char>());
  CHECK(content == csv);
}
