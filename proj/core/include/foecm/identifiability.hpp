#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "foecm/gl_model.hpp"
#include "foecm/poly.hpp"

namespace foecm {

/**
 * The five polynomials in alpha2 that the reduction of the head-
 * coefficient system produces, written against the shorthand
 * S = f_{2T+1} - d g_{2T+1} (= b1 + b2) and F = f_{2T} - d g_{2T}:
 *
 *   A(x)  = -(x (g_{2T+1} + x) + g_{2T})                 degree 2
 *   B(x)  = g_{2T-1} + A(x) (g_{2T+1} + (2x + 2)/3)      degree 3
 *   C0(x) = g_{2T+1} + 5x/3                              degree 1
 *   D(x)  = S (g_{2T+1} + x) - F                         degree 1
 *   E(x)  = g_{2T+1} + 2x                                degree 1
 *
 * The full C of the derivation is C0 + alpha1/3; the alpha1 part stays
 * symbolic until the two closed forms for alpha1 are intersected.
 */
struct AlphaPolys {
  RealPoly A;
  RealPoly B;
  RealPoly C0;
  RealPoly D;
  RealPoly E;
};

/** Which closed form of alpha1 in terms of alpha2 to assemble. */
enum class AlphaEquation {
  Order3,  ///< from the third head equation: degrees (4, 3)
  Order4,  ///< from the fourth head equation: degrees (5, 4)
};

/** alpha1 = num(alpha2) / den(alpha2). */
struct RationalAlpha {
  RealPoly num;
  RealPoly den;
};

/** Where a candidate root of the octic left the pipeline. */
enum class CandidateStatus {
  RejectedComplex,       ///< imaginary part above the realness threshold
  RejectedRange,         ///< alpha2 (or recovered alpha1) outside (0, 1)
  RejectedInterval,      ///< alpha2 inside the closed exclusion interval
  RejectedDegenerate,    ///< a recovery divisor fell below threshold
  RejectedNegativeGain,  ///< recovered gains imply a non-positive element
  RejectedVerification,  ///< rebuilt series mismatched the input
  Accepted,              ///< survived every stage
};

/** One root of the octic, tracked through filtering and recovery. */
struct CandidateSolution {
  ComplexVal root;              ///< the octic root as found
  Real alpha2;                  ///< real part of the root
  std::optional<Real> alpha1;   ///< set once recover_alpha1 succeeded
  std::optional<Real> a10;      ///< recovered head a_{1,0}
  std::optional<Real> b1;       ///< recovered gain ts^alpha1 / c1
  std::optional<Real> b2;       ///< recovered gain ts^alpha2 / c2
  std::optional<ModelParams> recovered;    ///< full circuit, Accepted only
  std::optional<Real> max_norm_error;      ///< verification mismatch, if run
  CandidateStatus status = CandidateStatus::RejectedComplex;
};

/** Output of filter_candidates. */
struct FilterResult {
  std::vector<CandidateSolution> rejected;  ///< complex / range / interval
  std::vector<Real> survivors;              ///< alpha2 values, ascending
};

enum class Verdict {
  GloballyIdentifiable,  ///< exactly one candidate accepted
  Identifiable,          ///< finitely many (>= 2) candidates accepted
  Unidentifiable,        ///< reserved: a continuum of solutions
  NoValidSolution,       ///< every candidate rejected
};

struct Timings {
  double total_ms = 0;
  double roots_ms = 0;
  double verify_ms = 0;
};

/** Everything analyze() concluded, ready for reporting. */
struct IdentifiabilityReport {
  RealPoly octic;                          ///< monic degree-8 candidate polynomial
  std::pair<Real, Real> exclusion;         ///< interval of structurally impossible alpha2
  std::vector<CandidateSolution> candidates;  ///< ascending by (re, im) of the root
  int accepted_count = 0;
  Verdict verdict = Verdict::NoValidSolution;
  int horizon = 0;
  Real ts;
  Timings timings;
};

/** Tunable thresholds of the analysis pipeline. */
struct AnalyzeOptions {
  Real verification_tolerance;  ///< accept when max norm error is below this
  Real im_threshold;            ///< realness cut-off for octic roots
  Real degeneracy_threshold;    ///< minimum magnitude for recovery divisors

  /** 1e-12 verification tolerance, sqrt-epsilon thresholds. */
  static AnalyzeOptions defaults(const ContextPtr& ctx);
};

/** Outcome of recover_parameters. */
struct Recovery {
  Real a10;
  Real b1;
  Real b2;
  std::optional<ModelParams> params;  ///< set when status == Accepted
  CandidateStatus status = CandidateStatus::Accepted;
};

/** Outcome of verify_candidate. */
struct VerifyResult {
  Real max_norm_error;
  bool accepted = false;
};

/** Residuals of the two classical low-order coefficient equations. */
struct LegacyResiduals {
  int horizon = 0;
  Real g0;
  Real g1;
  Real g2;
  Real residual1;
  Real residual2;
};

/** Assembles the five reduction polynomials from the head coefficients. */
AlphaPolys build_alpha_polys(const IdentCoeffs& coeffs);

/**
 * Expresses alpha1 as a ratio of polynomials in alpha2.
 *
 * Order3 eliminates alpha1 from the third head equation:
 *   den = (F3 E + A D) / 3
 *   num = -(S B E + F3 C0 E + A C0 D - 2 B D)
 * with F3 = f_{2T-1} - d g_{2T-1}.
 *
 * Order4 does the same with the fourth head equation, where the
 * substituted feedback tails contribute an (alpha1 - 2) factor:
 *   den = S B E + (x - 2) A D / 3 - B D - F4 E
 *   num = -(-2 S B E + (x - 2) A C0 D - (x - 4) B D - 3 F4 C0 E)
 * with F4 = f_{2T-2} - d g_{2T-2}.
 *
 * @returns numerator/denominator of degrees (4, 3) for Order3 and
 *          (5, 4) for Order4.
 */
RationalAlpha alpha1_as_rational(const IdentCoeffs& coeffs, const AlphaPolys& polys,
                                 AlphaEquation equation);

/**
 * Cross-multiplies the two closed forms of alpha1 into the monic
 * degree-8 polynomial whose real roots are the candidate alpha2.
 *
 * @throws DegenerateStructureError if the difference collapses to zero
 *         or its degree falls below 8 (leading coefficient negligible
 *         against the largest coefficient).
 */
RealPoly build_octic(const RationalAlpha& order3, const RationalAlpha& order4);

/**
 * The open interval of alpha2 values no valid circuit can produce:
 * with p = F / S, the endpoints are p - g_{2T+1} and -p (sorted).
 * Any alpha2 strictly inside forces b1 <= 0 or b2 <= 0.
 *
 * @throws DegenerateStructureError if |S| is below sqrt-epsilon (the
 *         gain sum of a valid circuit is strictly positive).
 */
std::pair<Real, Real> exclusion_interval(const IdentCoeffs& coeffs);

/**
 * Splits octic roots into rejected candidates and surviving alpha2
 * values.  Roots with |Im| >= im_threshold are RejectedComplex; real
 * ones outside (0, 1) are RejectedRange (boundary inclusive); real
 * ones inside the closed exclusion interval are RejectedInterval.
 *
 * Rejections here look at alpha2 alone; the range check on the
 * recovered alpha1 happens in analyze() once alpha1 exists.
 */
FilterResult filter_candidates(const std::vector<ComplexVal>& roots,
                               const std::pair<Real, Real>& interval,
                               const Real& im_threshold);

/**
 * Evaluates the Order3 closed form at a surviving alpha2.
 *
 * @returns nullopt when |den(alpha2)| is below degeneracy_threshold
 *          (the candidate is rejected as degenerate).
 */
std::optional<Real> recover_alpha1(const Real& alpha2, const RationalAlpha& order3,
                                   const Real& degeneracy_threshold);

/**
 * Recovers the remaining structure at a candidate (alpha1, alpha2):
 *
 *   a_{1,0} = -(g_{2T+1} + alpha2),      b1 = D(alpha2) / E(alpha2),
 *   b2 = S - b1,                          r_inf = d,
 *   c_i = ts^alpha_i / b_i,               r1 = ts^alpha1 / (c1 (alpha1 - a_{1,0})).
 *
 * Status RejectedDegenerate when |E(alpha2)| is below the threshold;
 * RejectedNegativeGain when b1, b2, d, or alpha1 - a_{1,0} is not
 * strictly positive (each implies a non-positive circuit element).
 */
Recovery recover_parameters(const Real& alpha1, const Real& alpha2,
                            const IdentCoeffs& coeffs, const AlphaPolys& polys,
                            const Real& ts, int horizon,
                            const Real& degeneracy_threshold);

/**
 * Rebuilds the denominator from (alpha1, a_{1,0}, alpha2) alone and
 * compares the 15 leading coefficients g_{2T} .. g_{2T-14} of the
 * rebuild against the input, each normalized by max(|g_k|, 1e-30).
 *
 * @returns the maximum normalized mismatch and whether it clears tol.
 */
VerifyResult verify_candidate(const Real& alpha1, const Real& a10, const Real& alpha2,
                              const MonicTF& tf, const Real& tol);

/**
 * Runs the full pipeline: head extraction, reduction, octic roots,
 * filtering, recovery, verification, verdict.
 *
 * @param tf transfer function with horizon >= 7 and monic denominator.
 * @param ts sampling period used to de-normalize recovered parameters.
 * @throws DomainError, DegenerateStructureError, ConvergenceError as
 *         propagated from the stages above.
 */
IdentifiabilityReport analyze(const MonicTF& tf, const Real& ts,
                              const AnalyzeOptions& options);

/**
 * Residuals of the two classical conditions on the lowest-order
 * denominator coefficients,
 *
 *   g1 + g0 (T+1) (1/(alpha1 - T) + 1/(alpha2 - T))          and
 *   g2 - g0 (T+1) (a + b + c),
 *     a = T / ((alpha2 - T)(alpha2 - T + 1)),
 *     b = (T+1) / ((alpha1 - T)(alpha2 - T)),
 *     c = T / ((alpha1 - T)(alpha1 - T + 1)),
 *
 * evaluated at a known (alpha1, alpha2).  Because g0, g1, g2 decay
 * like binomial tails as T grows, these equations lose their
 * information content — the effect the head-coefficient approach
 * exists to avoid.
 */
LegacyResiduals legacy_residuals(const MonicTF& tf, const Real& alpha1, const Real& alpha2);

/**
 * Largest relative error across the six circuit elements (r_inf, r1,
 * c1, alpha1, c2, alpha2), each normalized by the true magnitude.
 */
Real max_relative_error(const ModelParams& truth, const ModelParams& recovered);

/**
 * The accepted candidate whose recovered circuit is closest to truth
 * under max_relative_error, or nullptr when none was accepted.  The
 * error of the returned candidate is stored through error_out if given.
 */
const CandidateSolution* best_accepted(const IdentifiabilityReport& report,
                                       const ModelParams& truth, Real* error_out = nullptr);

std::string to_string(CandidateStatus status);
std::string to_string(Verdict verdict);

}  // namespace foecm
