#include "foecm/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "foecm/errors.hpp"

namespace foecm {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ParseError("cannot open '" + path + "' for reading");
  }
  try {
    return ordered_json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("'" + path + "': " + e.what());
  }
}

void store_text(const std::string& text, const std::string& path) {
  std::ofstream out(path);
  if (!out) {
    throw ParseError("cannot open '" + path + "' for writing");
  }
  out << text;
  if (!out) {
    throw ParseError("failed while writing '" + path + "'");
  }
}

Real field_to_real(const ordered_json& v, const std::string& what) {
  if (v.is_string()) {
    return parse_real(v.get<std::string>(), what);
  }
  if (v.is_number()) {
    return parse_real(v.dump(), what);
  }
  throw ParseError(what + " must be a decimal string or a number");
}

const ordered_json& require_key(const ordered_json& obj, const std::string& key,
                                const std::string& where) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(where + ": missing required key '" + key + "'");
  }
  return *it;
}

std::vector<Real> array_to_reals(const ordered_json& arr, const std::string& what) {
  if (!arr.is_array()) {
    throw ParseError(what + " must be an array");
  }
  std::vector<Real> out;
  out.reserve(arr.size());
  std::size_t k = 0;
  for (const auto& v : arr) {
    out.push_back(field_to_real(v, what + "[" + std::to_string(k) + "]"));
    ++k;
  }
  return out;
}

ordered_json reals_to_array(const std::vector<Real>& values) {
  ordered_json arr = ordered_json::array();
  for (const Real& v : values) {
    arr.push_back(to_decimal_string(v));
  }
  return arr;
}

ordered_json candidate_to_json(const CandidateSolution& c) {
  ordered_json j;
  j["root"] = {{"re", to_decimal_string(c.root.re)}, {"im", to_decimal_string(c.root.im)}};
  j["alpha2"] = to_decimal_string(c.alpha2);
  j["status"] = to_string(c.status);
  if (c.alpha1) {
    j["alpha1"] = to_decimal_string(*c.alpha1);
  }
  if (c.a10) {
    j["a10"] = to_decimal_string(*c.a10);
  }
  if (c.b1) {
    j["b1"] = to_decimal_string(*c.b1);
  }
  if (c.b2) {
    j["b2"] = to_decimal_string(*c.b2);
  }
  if (c.max_norm_error) {
    j["max_norm_error"] = to_decimal_string(*c.max_norm_error);
  }
  if (c.recovered) {
    const ModelParams& p = *c.recovered;
    j["recovered"] = {{"r_inf", to_decimal_string(p.r_inf)}, {"r1", to_decimal_string(p.r1)},
                      {"c1", to_decimal_string(p.c1)},       {"alpha1", to_decimal_string(p.alpha1)},
                      {"c2", to_decimal_string(p.c2)},       {"alpha2", to_decimal_string(p.alpha2)},
                      {"ts", to_decimal_string(p.ts)},       {"horizon", p.horizon}};
  }
  return j;
}

}  // namespace

std::string to_decimal_string(const Real& x) { return x.str(); }

std::string to_decimal_string(const Real& x, int digits) {
  return x.str(static_cast<std::streamsize>(digits));
}

Real parse_real(const std::string& text, const std::string& what) {
  try {
    return Real(text);
  } catch (const std::exception&) {
    throw ParseError(what + ": '" + text + "' is not a valid decimal number");
  }
}

ModelParams read_params_file(const std::string& path, const ContextPtr& ctx) {
  if (!ctx) {
    throw DomainError("read_params_file: precision context must not be null");
  }
  ctx->activate();
  const ordered_json j = load_json(path);
  if (!j.is_object()) {
    throw ParseError("'" + path + "': top level must be a JSON object");
  }
  const std::string where = "'" + path + "'";

  ModelParams p;
  p.ctx = ctx;
  p.r_inf = field_to_real(require_key(j, "r_inf", where), where + ": r_inf");
  p.r1 = field_to_real(require_key(j, "r1", where), where + ": r1");
  p.c1 = field_to_real(require_key(j, "c1", where), where + ": c1");
  p.alpha1 = field_to_real(require_key(j, "alpha1", where), where + ": alpha1");
  p.c2 = field_to_real(require_key(j, "c2", where), where + ": c2");
  p.alpha2 = field_to_real(require_key(j, "alpha2", where), where + ": alpha2");
  p.ts = field_to_real(require_key(j, "ts", where), where + ": ts");

  const ordered_json& horizon = require_key(j, "horizon", where);
  if (!horizon.is_number_integer()) {
    throw ParseError(where + ": horizon must be an integer");
  }
  p.horizon = horizon.get<int>();
  p.validate();
  return p;
}

void write_params_file(const ModelParams& params, const std::string& path) {
  ordered_json j;
  j["r_inf"] = to_decimal_string(params.r_inf);
  j["r1"] = to_decimal_string(params.r1);
  j["c1"] = to_decimal_string(params.c1);
  j["alpha1"] = to_decimal_string(params.alpha1);
  j["c2"] = to_decimal_string(params.c2);
  j["alpha2"] = to_decimal_string(params.alpha2);
  j["ts"] = to_decimal_string(params.ts);
  j["horizon"] = params.horizon;
  store_text(j.dump(2) + "\n", path);
}

TFFile read_tf_file(const std::string& path, const ContextPtr& ctx) {
  if (!ctx) {
    throw DomainError("read_tf_file: precision context must not be null");
  }
  ctx->activate();
  const ordered_json j = load_json(path);
  if (!j.is_object()) {
    throw ParseError("'" + path + "': top level must be a JSON object");
  }
  const std::string where = "'" + path + "'";

  TFFile out;
  out.tf.ctx = ctx;
  out.tf.f = array_to_reals(require_key(j, "f", where), where + ": f");
  out.tf.g = array_to_reals(require_key(j, "g", where), where + ": g");
  out.ts = j.contains("ts") ? field_to_real(j["ts"], where + ": ts") : Real(1);

  if (out.tf.f.size() != out.tf.g.size() + 1) {
    throw ParseError(where +
                     ": f must have exactly one more coefficient than g "
                     "(the denominator's monic leading 1 is implicit)");
  }
  if (out.tf.f.size() < 17 || out.tf.f.size() % 2 == 0) {
    throw ParseError(where + ": f must have odd length 2T+3 with T >= 7");
  }
  return out;
}

void write_tf_file(const MonicTF& tf, const Real& ts, const std::string& path) {
  ordered_json j;
  j["ts"] = to_decimal_string(ts);
  j["horizon"] = tf.horizon();
  j["f"] = reals_to_array(tf.f);
  j["g"] = reals_to_array(tf.g);
  store_text(j.dump(2) + "\n", path);
}

namespace {

// Everything except "timings", which stays last so that the only block
// varying between identical runs sits at the tail of the file.
ordered_json report_body(const IdentifiabilityReport& report) {
  ordered_json j;
  j["verdict"] = to_string(report.verdict);
  j["accepted_count"] = report.accepted_count;
  j["horizon"] = report.horizon;
  j["ts"] = to_decimal_string(report.ts);
  j["exclusion_interval"] = {to_decimal_string(report.exclusion.first),
                             to_decimal_string(report.exclusion.second)};
  j["octic"] = reals_to_array(report.octic.coeffs());
  ordered_json candidates = ordered_json::array();
  for (const CandidateSolution& c : report.candidates) {
    candidates.push_back(candidate_to_json(c));
  }
  j["candidates"] = std::move(candidates);
  return j;
}

ordered_json timings_json(const Timings& t) {
  return {{"total_ms", t.total_ms}, {"roots_ms", t.roots_ms}, {"verify_ms", t.verify_ms}};
}

}  // namespace

std::string report_to_string(const IdentifiabilityReport& report) {
  ordered_json j = report_body(report);
  j["timings"] = timings_json(report.timings);
  return j.dump(2) + "\n";
}

void write_report_file(const IdentifiabilityReport& report, const std::string& path) {
  store_text(report_to_string(report), path);
}

std::string roundtrip_report_to_string(const IdentifiabilityReport& report,
                                       const ModelParams& truth) {
  ordered_json j = report_body(report);

  Real worst(0);
  const CandidateSolution* best = best_accepted(report, truth, &worst);
  if (best != nullptr) {
    const ModelParams& rec = *best->recovered;
    const auto rel = [](const Real& t, const Real& r) {
      return to_decimal_string(abs(r - t) / abs(t));
    };
    j["recovery"] = {{"r_inf", rel(truth.r_inf, rec.r_inf)},
                     {"r1", rel(truth.r1, rec.r1)},
                     {"c1", rel(truth.c1, rec.c1)},
                     {"alpha1", rel(truth.alpha1, rec.alpha1)},
                     {"c2", rel(truth.c2, rec.c2)},
                     {"alpha2", rel(truth.alpha2, rec.alpha2)},
                     {"max", to_decimal_string(worst)}};
  } else {
    j["recovery"] = nullptr;
  }
  j["timings"] = timings_json(report.timings);
  return j.dump(2) + "\n";
}

void write_roundtrip_report_file(const IdentifiabilityReport& report,
                                 const ModelParams& truth, const std::string& path) {
  store_text(roundtrip_report_to_string(report, truth), path);
}

std::vector<Real> read_grid_file(const std::string& path, const ContextPtr& ctx) {
  if (!ctx) {
    throw DomainError("read_grid_file: precision context must not be null");
  }
  ctx->activate();
  const ordered_json j = load_json(path);
  const std::string where = "'" + path + "'";

  std::vector<Real> grid;
  if (j.is_array()) {
    grid = array_to_reals(j, where + ": grid");
  } else if (j.is_object() && j.contains("grid")) {
    grid = array_to_reals(j["grid"], where + ": grid");
  } else {
    throw ParseError(where + ": expected an array or an object with a 'grid' key");
  }
  if (grid.empty()) {
    throw DomainError(where + ": frequency grid must not be empty");
  }
  for (const Real& w : grid) {
    if (!(w > 0)) {
      throw DomainError(where + ": frequencies must be strictly positive");
    }
  }
  return grid;
}

std::string spectrum_to_csv(const std::vector<ImpedancePoint>& points) {
  std::ostringstream out;
  out << "omega,z_re,z_im\n";
  for (const ImpedancePoint& p : points) {
    out << to_decimal_string(p.omega) << ',' << to_decimal_string(p.z_re) << ','
        << to_decimal_string(p.z_im) << '\n';
  }
  return out.str();
}

void write_spectrum_csv(const std::vector<ImpedancePoint>& points, const std::string& path) {
  store_text(spectrum_to_csv(points), path);
}

}  // namespace foecm
