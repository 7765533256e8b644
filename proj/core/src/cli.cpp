#include "foecm/cli.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>
#include <thread>
#include <utility>

#include <json.hpp>

#include "foecm/errors.hpp"
#include "foecm/io.hpp"
#include "foecm/spectra.hpp"

namespace foecm::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr std::array<const char*, 6> kSweepRangeKeys = {
    "r_inf", "r1", "c1", "alpha1", "c2", "alpha2",
};

AnalyzeOptions options_for(const RunConfig& config, const ContextPtr& ctx) {
  AnalyzeOptions opts = AnalyzeOptions::defaults(ctx);
  opts.verification_tolerance =
      parse_real(config.verification_tolerance, "verification tolerance");
  if (!(opts.verification_tolerance > 0)) {
    throw DomainError("verification tolerance must be strictly positive");
  }
  return opts;
}

std::string short_real(const Real& x, int digits = 10) { return x.str(digits); }

void print_report_summary(const IdentifiabilityReport& report, std::ostream& out) {
  out << "verdict: " << to_string(report.verdict)
      << " (accepted candidates: " << report.accepted_count << ")\n";
  out << "horizon: " << report.horizon << ", ts: " << short_real(report.ts) << "\n";
  out << "exclusion interval: (" << short_real(report.exclusion.first) << ", "
      << short_real(report.exclusion.second) << ")\n";
  out << "octic coefficients (ascending):\n";
  for (const Real& c : report.octic.coeffs()) {
    out << "  " << short_real(c, 17) << "\n";
  }
  out << "candidates:\n";
  out << "  " << std::left << std::setw(26) << "root_re" << std::setw(26) << "root_im"
      << std::setw(26) << "alpha1" << std::setw(22) << "status" << "max_norm_error\n";
  for (const CandidateSolution& c : report.candidates) {
    out << "  " << std::left << std::setw(26) << short_real(c.root.re, 15) << std::setw(26)
        << short_real(c.root.im, 6) << std::setw(26)
        << (c.alpha1 ? short_real(*c.alpha1, 15) : std::string("-")) << std::setw(22)
        << to_string(c.status)
        << (c.max_norm_error ? short_real(*c.max_norm_error, 6) : std::string("-")) << "\n";
  }
}

int require_int(const ordered_json& v, const std::string& what) {
  if (!v.is_number_integer()) {
    throw ParseError(what + " must be an integer");
  }
  return v.get<int>();
}

std::string require_string_or_number(const ordered_json& v, const std::string& what) {
  if (v.is_string()) {
    return v.get<std::string>();
  }
  if (v.is_number()) {
    return v.dump();
  }
  throw ParseError(what + " must be a decimal string or a number");
}

}  // namespace

void load_run_config(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open config file '" + path + "'");
  }
  ordered_json j;
  try {
    j = ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
  if (!j.is_object()) {
    throw ParseError("'" + path + "': config must be a JSON object");
  }

  for (const auto& [key, value] : j.items()) {
    const std::string what = "'" + path + "': " + key;
    if (key == "digits") {
      config.digits = require_int(value, what);
    } else if (key == "max_iterations") {
      config.max_iterations = require_int(value, what);
    } else if (key == "root_tolerance") {
      config.root_tolerance = require_string_or_number(value, what);
    } else if (key == "verification_tolerance") {
      config.verification_tolerance = require_string_or_number(value, what);
    } else if (key == "ts") {
      config.ts = require_string_or_number(value, what);
    } else if (key == "horizon") {
      config.horizon = require_int(value, what);
    } else if (key == "seed") {
      if (!value.is_number_unsigned()) {
        throw ParseError(what + " must be a non-negative integer");
      }
      config.seed = value.get<std::uint64_t>();
    } else if (key == "samples") {
      config.samples = require_int(value, what);
    } else if (key == "workers") {
      config.workers = require_int(value, what);
    } else if (key == "out") {
      if (!value.is_string()) {
        throw ParseError(what + " must be a string");
      }
      config.out = value.get<std::string>();
    } else if (key == "grid_file") {
      if (!value.is_string()) {
        throw ParseError(what + " must be a string");
      }
      config.grid_file = value.get<std::string>();
    } else if (key == "omega_min") {
      config.omega_min = require_string_or_number(value, what);
    } else if (key == "omega_max") {
      config.omega_max = require_string_or_number(value, what);
    } else if (key == "points") {
      config.points = require_int(value, what);
    } else if (key == "legacy_horizons") {
      if (!value.is_array()) {
        throw ParseError(what + " must be an array of integers");
      }
      config.legacy_horizons.clear();
      for (const auto& t : value) {
        config.legacy_horizons.push_back(require_int(t, what));
      }
    } else if (key == "sweep_ranges") {
      if (!value.is_object()) {
        throw ParseError(what + " must be an object of {parameter: [low, high]} entries");
      }
      for (const auto& [param, range] : value.items()) {
        const auto slot = std::find(kSweepRangeKeys.begin(), kSweepRangeKeys.end(), param);
        if (slot == kSweepRangeKeys.end()) {
          throw ParseError(what + ": unknown parameter '" + param + "'");
        }
        if (!range.is_array() || range.size() != 2 || !range[0].is_number() ||
            !range[1].is_number()) {
          throw ParseError(what + "." + param + " must be an array of two numbers");
        }
        const double lo = range[0].get<double>();
        const double hi = range[1].get<double>();
        if (!(lo <= hi)) {
          throw ParseError(what + "." + param + ": low must not exceed high");
        }
        config.sweep_ranges[static_cast<std::size_t>(slot - kSweepRangeKeys.begin())] = {lo, hi};
      }
    } else {
      throw ParseError("'" + path + "': unknown config key '" + key + "'");
    }
  }
}

ContextPtr make_context(const RunConfig& config) {
  if (config.root_tolerance.empty()) {
    return PrecisionContext::create(config.digits, config.max_iterations);
  }
  return PrecisionContext::create(config.digits, config.max_iterations,
                                  config.root_tolerance);
}

int verdict_exit_code(Verdict verdict) {
  switch (verdict) {
    case Verdict::GloballyIdentifiable: return 0;
    case Verdict::Identifiable: return 2;
    case Verdict::Unidentifiable: return 3;
    case Verdict::NoValidSolution: return 4;
  }
  return 70;
}

int error_exit_code(const std::exception& error) {
  if (dynamic_cast<const ParseError*>(&error) != nullptr ||
      dynamic_cast<const DomainError*>(&error) != nullptr) {
    return 65;
  }
  return 70;
}

int cmd_analyze(const RunConfig& config, const std::string& tf_path,
                const std::string& params_path, std::ostream& out) {
  if (tf_path.empty() == params_path.empty()) {
    throw DomainError("analyze: exactly one input is required, "
                      "a transfer-function file or a parameters file");
  }
  const ContextPtr ctx = make_context(config);

  MonicTF tf;
  Real ts;
  if (!tf_path.empty()) {
    TFFile input = read_tf_file(tf_path, ctx);
    tf = std::move(input.tf);
    ts = config.ts.empty() ? input.ts : parse_real(config.ts, "ts");
  } else {
    const ModelParams params = read_params_file(params_path, ctx);
    tf = expand_monic_tf(build_gl_series(params));
    ts = config.ts.empty() ? params.ts : parse_real(config.ts, "ts");
  }

  const IdentifiabilityReport report = analyze(tf, ts, options_for(config, ctx));
  print_report_summary(report, out);
  if (!config.out.empty()) {
    write_report_file(report, config.out);
    out << "report written to " << config.out << "\n";
  }
  return verdict_exit_code(report.verdict);
}

int cmd_roundtrip(const RunConfig& config, const std::string& params_path, std::ostream& out) {
  const ContextPtr ctx = make_context(config);
  const ModelParams truth = read_params_file(params_path, ctx);

  const MonicTF tf = expand_monic_tf(build_gl_series(truth));
  const IdentifiabilityReport report = analyze(tf, truth.ts, options_for(config, ctx));
  print_report_summary(report, out);

  Real recovery_err(0);
  const CandidateSolution* best = best_accepted(report, truth, &recovery_err);
  if (best) {
    const ModelParams& rec = *best->recovered;
    const auto rel = [](const Real& t, const Real& r) { return abs(r - t) / abs(t); };
    out << "parameter recovery (accepted candidate closest to the input):\n";
    out << "  r_inf:  rel err " << short_real(rel(truth.r_inf, rec.r_inf), 3) << "\n";
    out << "  r1:     rel err " << short_real(rel(truth.r1, rec.r1), 3) << "\n";
    out << "  c1:     rel err " << short_real(rel(truth.c1, rec.c1), 3) << "\n";
    out << "  alpha1: rel err " << short_real(rel(truth.alpha1, rec.alpha1), 3) << "\n";
    out << "  c2:     rel err " << short_real(rel(truth.c2, rec.c2), 3) << "\n";
    out << "  alpha2: rel err " << short_real(rel(truth.alpha2, rec.alpha2), 3) << "\n";
    out << "  max:    " << short_real(recovery_err, 3) << "\n";
  } else {
    out << "parameter recovery: no accepted candidate\n";
  }
  if (!config.out.empty()) {
    write_roundtrip_report_file(report, truth, config.out);
    out << "report written to " << config.out << "\n";
  }
  return verdict_exit_code(report.verdict);
}

int cmd_sweep(const RunConfig& config, std::ostream& out) {
  if (config.samples < 1) {
    throw DomainError("sweep: samples must be at least 1");
  }
  if (config.workers < 1) {
    throw DomainError("sweep: workers must be at least 1");
  }
  for (std::size_t k = 0; k < config.sweep_ranges.size(); ++k) {
    if (!(config.sweep_ranges[k].first <= config.sweep_ranges[k].second)) {
      throw DomainError(std::string("sweep: range for ") + kSweepRangeKeys[k] +
                        " must satisfy low <= high");
    }
  }
  const ContextPtr ctx = make_context(config);
  const std::string ts_text = config.ts.empty() ? "0.001" : config.ts;

  // One seeded pass generates every draw up front, so the results do
  // not depend on how draws are later spread across workers.
  std::mt19937_64 rng(config.seed);
  const auto uniform = [&rng](double lo, double hi) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + u * (hi - lo);
  };
  std::vector<std::array<double, 6>> draws(static_cast<std::size_t>(config.samples));
  for (auto& d : draws) {
    for (std::size_t k = 0; k < config.sweep_ranges.size(); ++k) {
      d[k] = uniform(config.sweep_ranges[k].first, config.sweep_ranges[k].second);
    }
  }

  struct DrawResult {
    std::string verdict = "InternalError";
    int accepted = 0;
    std::string recovery_error = "-";
    std::string message;
    bool failed = true;
  };
  std::vector<DrawResult> results(draws.size());

  std::atomic<std::size_t> cursor{0};
  const auto worker = [&]() {
    ctx->activate();
    const AnalyzeOptions opts = options_for(config, ctx);
    const Real ts = parse_real(ts_text, "ts");
    for (std::size_t i = cursor.fetch_add(1); i < draws.size(); i = cursor.fetch_add(1)) {
      DrawResult& res = results[i];
      try {
        ModelParams p;
        p.ctx = ctx;
        p.r_inf = Real(draws[i][0]);
        p.r1 = Real(draws[i][1]);
        p.c1 = Real(draws[i][2]);
        p.alpha1 = Real(draws[i][3]);
        p.c2 = Real(draws[i][4]);
        p.alpha2 = Real(draws[i][5]);
        p.ts = ts;
        p.horizon = config.horizon;

        const MonicTF tf = expand_monic_tf(build_gl_series(p));
        const IdentifiabilityReport report = analyze(tf, ts, opts);
        res.verdict = to_string(report.verdict);
        res.accepted = report.accepted_count;
        Real err(0);
        if (best_accepted(report, p, &err) != nullptr) {
          res.recovery_error = err.str(3);
        }
        res.failed = false;
      } catch (const std::exception& e) {
        res.message = e.what();
      }
    }
  };

  const int worker_count = std::min<int>(config.workers, config.samples);
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(worker_count));
  for (int w = 0; w < worker_count; ++w) {
    pool.emplace_back(worker);
  }
  for (std::thread& t : pool) {
    t.join();
  }

  std::ostringstream csv;
  csv << "draw,r_inf,r1,c1,alpha1,c2,alpha2,verdict,accepted_count,max_param_rel_error\n";
  csv << std::setprecision(17);
  for (std::size_t i = 0; i < draws.size(); ++i) {
    csv << i;
    for (const double v : draws[i]) {
      csv << ',' << v;
    }
    csv << ',' << results[i].verdict << ',' << results[i].accepted << ','
        << results[i].recovery_error << '\n';
  }

  std::map<std::string, int> verdict_counts;
  int failures = 0;
  bool all_global = true;
  for (const DrawResult& res : results) {
    ++verdict_counts[res.verdict];
    failures += res.failed ? 1 : 0;
    all_global = all_global && res.verdict == "GloballyIdentifiable";
  }

  out << "sweep: " << config.samples << " draws, seed " << config.seed << ", horizon "
      << config.horizon << ", ts " << ts_text << ", workers " << worker_count << "\n";
  for (const auto& [verdict, count] : verdict_counts) {
    out << "  " << verdict << ": " << count << "\n";
  }
  for (std::size_t i = 0; i < results.size(); ++i) {
    if (results[i].failed) {
      out << "  draw " << i << " failed: " << results[i].message << "\n";
    }
  }
  if (!config.out.empty()) {
    std::ofstream file(config.out);
    if (!file) {
      throw ParseError("cannot open '" + config.out + "' for writing");
    }
    file << csv.str();
    out << "rows written to " << config.out << "\n";
  } else {
    out << csv.str();
  }

  if (failures > 0) {
    return 70;
  }
  return all_global ? 0 : 2;
}

int cmd_spectra(const RunConfig& config, const std::string& params_path, std::ostream& out) {
  const ContextPtr ctx = make_context(config);
  const ModelParams params = read_params_file(params_path, ctx);

  std::vector<Real> grid;
  if (!config.grid_file.empty()) {
    grid = read_grid_file(config.grid_file, ctx);
  } else {
    grid = log_grid(parse_real(config.omega_min, "omega_min"),
                    parse_real(config.omega_max, "omega_max"), config.points);
  }

  const std::vector<ImpedancePoint> points = sweep_spectrum(params, grid);
  if (!config.out.empty()) {
    write_spectrum_csv(points, config.out);
    out << "spectrum with " << points.size() << " points written to " << config.out << "\n";
  } else {
    out << spectrum_to_csv(points);
  }
  return 0;
}

int cmd_legacy(const RunConfig& config, const std::string& params_path, std::ostream& out) {
  const ContextPtr ctx = make_context(config);
  ModelParams params = read_params_file(params_path, ctx);
  if (config.legacy_horizons.empty()) {
    throw DomainError("legacy: at least one horizon is required");
  }

  out << "residuals of the low-order coefficient equations at the true orders\n";
  out << std::left << std::setw(8) << "T" << std::setw(14) << "|g0|" << std::setw(14)
      << "|g1|" << std::setw(14) << "|g2|" << std::setw(14) << "residual1"
      << "residual2\n";
  for (const int T : config.legacy_horizons) {
    params.horizon = T;
    params.validate();
    const MonicTF tf = expand_monic_tf(build_gl_series(params));
    const LegacyResiduals r = legacy_residuals(tf, params.alpha1, params.alpha2);
    out << std::left << std::setw(8) << T << std::setw(14) << abs(r.g0).str(4)
        << std::setw(14) << abs(r.g1).str(4) << std::setw(14) << abs(r.g2).str(4)
        << std::setw(14) << r.residual1.str(4) << r.residual2.str(4) << "\n";
  }
  out << "the equations are exact, but their coefficients vanish as T grows;\n"
         "identification must instead use the leading coefficients\n";
  return 0;
}

}  // namespace foecm::cli
