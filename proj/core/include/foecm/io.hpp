#pragma once

#include <string>
#include <utility>
#include <vector>

#include "foecm/gl_model.hpp"
#include "foecm/identifiability.hpp"
#include "foecm/spectra.hpp"

namespace foecm {

/**
 * Full-precision decimal rendering of x (round-trips through
 * parse_real at the same working precision).
 */
std::string to_decimal_string(const Real& x);

/** Decimal rendering limited to `digits` significant digits. */
std::string to_decimal_string(const Real& x, int digits);

/**
 * Parses a decimal string at the precision active on this thread.
 *
 * @param what label used in the error message.
 * @throws ParseError if the text is not a decimal number.
 */
Real parse_real(const std::string& text, const std::string& what);

/**
 * Reads circuit parameters from a JSON file.  Every numeric field may
 * be given as a decimal string (precision preserving) or a JSON
 * number.  Required keys: r_inf, r1, c1, alpha1, c2, alpha2, ts,
 * horizon.
 *
 * @throws ParseError on malformed JSON or a missing/ill-typed key.
 * @throws DomainError if the parameters violate model invariants.
 */
ModelParams read_params_file(const std::string& path, const ContextPtr& ctx);

/** Writes circuit parameters as JSON with full-precision strings. */
void write_params_file(const ModelParams& params, const std::string& path);

/** A transfer function plus the sampling period it was produced at. */
struct TFFile {
  MonicTF tf;
  Real ts;
};

/**
 * Reads a transfer function from a JSON file holding the two
 * ascending coefficient arrays.  Keys: f (odd length 2T+3 >= 17) and
 * g (length 2T+2, the denominator below its implicit monic leading 1),
 * optional ts (default 1).
 *
 * @throws ParseError on malformed JSON or mismatched array shapes.
 */
TFFile read_tf_file(const std::string& path, const ContextPtr& ctx);

/** Writes a transfer function as JSON with full-precision strings. */
void write_tf_file(const MonicTF& tf, const Real& ts, const std::string& path);

/**
 * Serializes an identifiability report as pretty-printed JSON with
 * deterministic key order.  Reals are full-precision decimal strings;
 * only the "timings" object varies between identical runs.
 */
std::string report_to_string(const IdentifiabilityReport& report);

/** Writes report_to_string(report) to a file. */
void write_report_file(const IdentifiabilityReport& report, const std::string& path);

/**
 * Like report_to_string, with a trailing "recovery" object holding the
 * per-parameter relative errors of the accepted candidate closest to
 * the true circuit (null when nothing was accepted).
 */
std::string roundtrip_report_to_string(const IdentifiabilityReport& report,
                                       const ModelParams& truth);

/** Writes roundtrip_report_to_string(report, truth) to a file. */
void write_roundtrip_report_file(const IdentifiabilityReport& report,
                                 const ModelParams& truth, const std::string& path);

/**
 * Reads a frequency grid from a JSON file: either a bare array or an
 * object with a "grid" key, entries as strings or numbers.
 *
 * @throws ParseError on malformed input; DomainError on empty grids
 *         or non-positive frequencies.
 */
std::vector<Real> read_grid_file(const std::string& path, const ContextPtr& ctx);

/** Renders impedance points as CSV (header omega,z_re,z_im). */
std::string spectrum_to_csv(const std::vector<ImpedancePoint>& points);

/** Writes spectrum_to_csv(points) to a file. */
void write_spectrum_csv(const std::vector<ImpedancePoint>& points, const std::string& path);

}  // namespace foecm
