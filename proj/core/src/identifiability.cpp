#include "foecm/identifiability.hpp"

#include <algorithm>
#include <chrono>
#include <utility>

#include "foecm/errors.hpp"

namespace foecm {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

// S = f_{2T+1} - d g_{2T+1}; equals b1 + b2 for any in-class input.
Real gain_sum(const IdentCoeffs& c) { return c.f[0] - c.d * c.g[0]; }

// F = f_{2T} - d g_{2T}.
Real second_gap(const IdentCoeffs& c) { return c.f[1] - c.d * c.g[1]; }

RealPoly linear(const Real& c0, const Real& c1, const ContextPtr& ctx) {
  return RealPoly({c0, c1}, ctx);
}

RealPoly constant(const Real& c0, const ContextPtr& ctx) { return RealPoly({c0}, ctx); }

bool ascending_root_order(const ComplexVal& a, const ComplexVal& b) {
  return a.re != b.re ? a.re < b.re : a.im < b.im;
}

}  // namespace

AlphaPolys build_alpha_polys(const IdentCoeffs& coeffs) {
  const ContextPtr& ctx = coeffs.ctx;
  if (!ctx) {
    throw DomainError("build_alpha_polys: precision context must not be null");
  }
  const Real S = gain_sum(coeffs);
  const Real F = second_gap(coeffs);
  const Real third(Real(1) / 3);

  AlphaPolys p{
      .A = RealPoly({-coeffs.g[1], -coeffs.g[0], Real(-1)}, ctx),
      .B = RealPoly(ctx),
      .C0 = linear(coeffs.g[0], 5 * third, ctx),
      .D = linear(S * coeffs.g[0] - F, S, ctx),
      .E = linear(coeffs.g[0], Real(2), ctx),
  };
  p.B = poly_add(constant(coeffs.g[2], ctx),
                 poly_mul(p.A, linear(coeffs.g[0] + 2 * third, 2 * third, ctx)));
  return p;
}

RationalAlpha alpha1_as_rational(const IdentCoeffs& coeffs, const AlphaPolys& polys,
                                 AlphaEquation equation) {
  const ContextPtr& ctx = coeffs.ctx;
  const Real S = gain_sum(coeffs);
  const Real third(Real(1) / 3);

  const RealPoly SBE = poly_scale(poly_mul(polys.B, polys.E), S);
  const RealPoly AD = poly_mul(polys.A, polys.D);
  const RealPoly BD = poly_mul(polys.B, polys.D);
  const RealPoly C0E = poly_mul(polys.C0, polys.E);
  const RealPoly AC0D = poly_mul(polys.A, poly_mul(polys.C0, polys.D));

  if (equation == AlphaEquation::Order3) {
    const Real F3 = coeffs.f[2] - coeffs.d * coeffs.g[2];
    RealPoly den = poly_scale(poly_add(poly_scale(polys.E, F3), AD), third);
    RealPoly num = poly_add(SBE, poly_scale(C0E, F3));
    num = poly_add(num, AC0D);
    num = poly_sub(num, poly_scale(BD, Real(2)));
    return {.num = poly_scale(num, Real(-1)), .den = std::move(den)};
  }

  // Order4: the substituted third-depth feedback tails carry the
  // (alpha1 - 2) factor; alpha1 is eliminated with the Order3 form.
  const Real F4 = coeffs.f[3] - coeffs.d * coeffs.g[3];
  const RealPoly x_minus_2 = linear(Real(-2), Real(1), ctx);
  const RealPoly x_minus_4 = linear(Real(-4), Real(1), ctx);

  RealPoly den = poly_add(SBE, poly_scale(poly_mul(x_minus_2, AD), third));
  den = poly_sub(den, BD);
  den = poly_sub(den, poly_scale(polys.E, F4));

  RealPoly num = poly_scale(SBE, Real(-2));
  num = poly_add(num, poly_mul(x_minus_2, AC0D));
  num = poly_sub(num, poly_mul(x_minus_4, BD));
  num = poly_sub(num, poly_scale(C0E, 3 * F4));
  return {.num = poly_scale(num, Real(-1)), .den = std::move(den)};
}

RealPoly build_octic(const RationalAlpha& order3, const RationalAlpha& order4) {
  const RealPoly diff =
      poly_sub(poly_mul(order3.num, order4.den), poly_mul(order4.num, order3.den));
  const ContextPtr& ctx = diff.context();

  Real largest(0);
  for (const Real& c : diff.coeffs()) {
    largest = std::max(largest, abs(c));
  }
  if (diff.is_zero() || largest == 0) {
    throw DegenerateStructureError(
        "build_octic: the two closed forms of alpha1 coincide identically; "
        "the transfer function is structurally degenerate");
  }
  if (diff.degree() != 8 || abs(diff.leading()) < ctx->sqrt_epsilon() * largest) {
    throw DegenerateStructureError(
        "build_octic: candidate polynomial degree collapsed below 8; "
        "the transfer function is structurally degenerate");
  }
  return poly_scale(diff, 1 / diff.leading());
}

std::pair<Real, Real> exclusion_interval(const IdentCoeffs& coeffs) {
  if (!coeffs.ctx) {
    throw DomainError("exclusion_interval: precision context must not be null");
  }
  const Real S = gain_sum(coeffs);
  if (abs(S) < coeffs.ctx->sqrt_epsilon()) {
    throw DegenerateStructureError(
        "exclusion_interval: gain sum f_{2T+1} - d*g_{2T+1} is negligible; "
        "no positive-gain circuit produces this transfer function");
  }
  const Real p = second_gap(coeffs) / S;
  Real lo = p - coeffs.g[0];
  Real hi = -p;
  if (hi < lo) {
    swap(lo, hi);
  }
  return {std::move(lo), std::move(hi)};
}

FilterResult filter_candidates(const std::vector<ComplexVal>& roots,
                               const std::pair<Real, Real>& interval,
                               const Real& im_threshold) {
  std::vector<ComplexVal> ordered(roots);
  std::sort(ordered.begin(), ordered.end(), ascending_root_order);

  FilterResult out;
  for (const ComplexVal& z : ordered) {
    CandidateSolution c;
    c.root = z;
    c.alpha2 = z.re;
    if (abs(z.im) >= im_threshold) {
      c.status = CandidateStatus::RejectedComplex;
    } else if (!(z.re > 0 && z.re < 1)) {
      c.status = CandidateStatus::RejectedRange;
    } else if (z.re >= interval.first && z.re <= interval.second) {
      c.status = CandidateStatus::RejectedInterval;
    } else {
      out.survivors.push_back(z.re);
      continue;
    }
    out.rejected.push_back(std::move(c));
  }
  return out;
}

std::optional<Real> recover_alpha1(const Real& alpha2, const RationalAlpha& order3,
                                   const Real& degeneracy_threshold) {
  const Real den = poly_eval(order3.den, alpha2);
  if (abs(den) < degeneracy_threshold) {
    return std::nullopt;
  }
  return poly_eval(order3.num, alpha2) / den;
}

Recovery recover_parameters(const Real& alpha1, const Real& alpha2,
                            const IdentCoeffs& coeffs, const AlphaPolys& polys,
                            const Real& ts, int horizon,
                            const Real& degeneracy_threshold) {
  Recovery r;
  r.a10 = -(coeffs.g[0] + alpha2);

  const Real e_val = poly_eval(polys.E, alpha2);
  if (abs(e_val) < degeneracy_threshold) {
    r.b1 = 0;
    r.b2 = 0;
    r.status = CandidateStatus::RejectedDegenerate;
    return r;
  }
  r.b1 = poly_eval(polys.D, alpha2) / e_val;
  r.b2 = gain_sum(coeffs) - r.b1;

  const Real r1_scale = alpha1 - r.a10;  // = ts^alpha1 / (r1 c1), positive in-class
  if (!(r.b1 > 0) || !(r.b2 > 0) || !(coeffs.d > 0) || !(r1_scale > 0)) {
    r.status = CandidateStatus::RejectedNegativeGain;
    return r;
  }

  ModelParams params;
  params.ctx = coeffs.ctx;
  params.r_inf = coeffs.d;
  params.alpha1 = alpha1;
  params.alpha2 = alpha2;
  params.ts = ts;
  params.horizon = horizon;
  params.c1 = pow(ts, alpha1) / r.b1;
  params.c2 = pow(ts, alpha2) / r.b2;
  params.r1 = r.b1 / r1_scale;
  r.params = std::move(params);
  r.status = CandidateStatus::Accepted;
  return r;
}

VerifyResult verify_candidate(const Real& alpha1, const Real& a10, const Real& alpha2,
                              const MonicTF& tf, const Real& tol) {
  const int T = tf.horizon();

  // Rebuild the denominator from the candidate alone; gains and
  // feed-through do not enter, so the check is purely structural.
  GLSeries rebuilt;
  rebuilt.ctx = tf.ctx;
  rebuilt.d = 0;
  rebuilt.b1 = 0;
  rebuilt.b2 = 0;
  rebuilt.a1.push_back(a10);
  for (Real& c : gl_binomial_series(alpha1, T, tf.ctx)) {
    rebuilt.a1.push_back(std::move(c));
  }
  rebuilt.a2.push_back(alpha2);
  for (Real& c : gl_binomial_series(alpha2, T, tf.ctx)) {
    rebuilt.a2.push_back(std::move(c));
  }
  const MonicTF re_tf = expand_monic_tf(rebuilt);

  const Real floor = pow10(Real(-30));
  VerifyResult v;
  v.max_norm_error = 0;
  for (int k = 2 * T; k >= 2 * T - 14; --k) {
    const std::size_t idx = static_cast<std::size_t>(k);
    const Real err = abs(re_tf.g[idx] - tf.g[idx]) / std::max(abs(tf.g[idx]), floor);
    v.max_norm_error = std::max(v.max_norm_error, err);
  }
  v.accepted = v.max_norm_error < tol;
  return v;
}

AnalyzeOptions AnalyzeOptions::defaults(const ContextPtr& ctx) {
  if (!ctx) {
    throw DomainError("AnalyzeOptions: precision context must not be null");
  }
  return {.verification_tolerance = pow10(Real(-12)),
          .im_threshold = ctx->sqrt_epsilon(),
          .degeneracy_threshold = ctx->sqrt_epsilon()};
}

IdentifiabilityReport analyze(const MonicTF& tf, const Real& ts,
                              const AnalyzeOptions& options) {
  if (!tf.ctx) {
    throw DomainError("analyze: precision context must not be null");
  }
  tf.ctx->activate();
  if (!(ts > 0)) {
    throw DomainError("analyze: sampling period ts must be strictly positive");
  }
  const auto t_total = Clock::now();

  const IdentCoeffs coeffs = head_coeffs(tf);
  const AlphaPolys polys = build_alpha_polys(coeffs);
  const RationalAlpha order3 = alpha1_as_rational(coeffs, polys, AlphaEquation::Order3);
  const RationalAlpha order4 = alpha1_as_rational(coeffs, polys, AlphaEquation::Order4);

  IdentifiabilityReport report{.octic = build_octic(order3, order4),
                               .exclusion = exclusion_interval(coeffs),
                               .candidates = {},
                               .accepted_count = 0,
                               .verdict = Verdict::NoValidSolution,
                               .horizon = tf.horizon(),
                               .ts = ts,
                               .timings = {}};

  const auto t_roots = Clock::now();
  const std::vector<ComplexVal> roots = find_roots(report.octic);
  report.timings.roots_ms = ms_since(t_roots);

  FilterResult filtered = filter_candidates(roots, report.exclusion, options.im_threshold);
  report.candidates = std::move(filtered.rejected);

  const auto t_verify = Clock::now();
  for (const Real& alpha2 : filtered.survivors) {
    CandidateSolution c;
    c.root = ComplexVal(alpha2);
    c.alpha2 = alpha2;

    const std::optional<Real> alpha1 =
        recover_alpha1(alpha2, order3, options.degeneracy_threshold);
    if (!alpha1) {
      c.status = CandidateStatus::RejectedDegenerate;
      report.candidates.push_back(std::move(c));
      continue;
    }
    c.alpha1 = *alpha1;
    if (!(*alpha1 > 0 && *alpha1 < 1)) {
      c.status = CandidateStatus::RejectedRange;
      report.candidates.push_back(std::move(c));
      continue;
    }

    Recovery rec = recover_parameters(*alpha1, alpha2, coeffs, polys, ts, tf.horizon(),
                                      options.degeneracy_threshold);
    c.a10 = rec.a10;
    c.b1 = rec.b1;
    c.b2 = rec.b2;
    if (rec.status != CandidateStatus::Accepted) {
      c.status = rec.status;
      report.candidates.push_back(std::move(c));
      continue;
    }

    const VerifyResult v =
        verify_candidate(*alpha1, rec.a10, alpha2, tf, options.verification_tolerance);
    c.max_norm_error = v.max_norm_error;
    if (v.accepted) {
      c.status = CandidateStatus::Accepted;
      c.recovered = std::move(rec.params);
      ++report.accepted_count;
    } else {
      c.status = CandidateStatus::RejectedVerification;
    }
    report.candidates.push_back(std::move(c));
  }
  report.timings.verify_ms = ms_since(t_verify);

  std::sort(report.candidates.begin(), report.candidates.end(),
            [](const CandidateSolution& a, const CandidateSolution& b) {
              return ascending_root_order(a.root, b.root);
            });

  if (report.accepted_count == 1) {
    report.verdict = Verdict::GloballyIdentifiable;
  } else if (report.accepted_count >= 2) {
    report.verdict = Verdict::Identifiable;
  } else {
    report.verdict = Verdict::NoValidSolution;
  }
  report.timings.total_ms = ms_since(t_total);
  return report;
}

LegacyResiduals legacy_residuals(const MonicTF& tf, const Real& alpha1, const Real& alpha2) {
  if (!tf.ctx) {
    throw DomainError("legacy_residuals: precision context must not be null");
  }
  if (!(alpha1 > 0 && alpha1 < 1) || !(alpha2 > 0 && alpha2 < 1)) {
    throw DomainError("legacy_residuals: fractional orders must lie in (0, 1)");
  }
  const int T = tf.horizon();

  LegacyResiduals r;
  r.horizon = T;
  r.g0 = tf.g[0];
  r.g1 = tf.g[1];
  r.g2 = tf.g[2];
  r.residual1 = r.g1 + r.g0 * (T + 1) * (1 / (alpha1 - T) + 1 / (alpha2 - T));

  const Real a_hat = T / ((alpha2 - T) * (alpha2 - T + 1));
  const Real b_hat = (T + 1) / ((alpha1 - T) * (alpha2 - T));
  const Real c_hat = T / ((alpha1 - T) * (alpha1 - T + 1));
  r.residual2 = r.g2 - r.g0 * (T + 1) * (a_hat + b_hat + c_hat);
  return r;
}

Real max_relative_error(const ModelParams& truth, const ModelParams& recovered) {
  const auto rel = [](const Real& t, const Real& r) { return abs(r - t) / abs(t); };
  Real m = rel(truth.r_inf, recovered.r_inf);
  m = std::max(m, rel(truth.r1, recovered.r1));
  m = std::max(m, rel(truth.c1, recovered.c1));
  m = std::max(m, rel(truth.alpha1, recovered.alpha1));
  m = std::max(m, rel(truth.c2, recovered.c2));
  m = std::max(m, rel(truth.alpha2, recovered.alpha2));
  return m;
}

const CandidateSolution* best_accepted(const IdentifiabilityReport& report,
                                       const ModelParams& truth, Real* error_out) {
  const CandidateSolution* best = nullptr;
  Real best_err(0);
  for (const CandidateSolution& c : report.candidates) {
    if (c.status != CandidateStatus::Accepted || !c.recovered) {
      continue;
    }
    const Real err = max_relative_error(truth, *c.recovered);
    if (best == nullptr || err < best_err) {
      best = &c;
      best_err = err;
    }
  }
  if (best != nullptr && error_out != nullptr) {
    *error_out = best_err;
  }
  return best;
}

std::string to_string(CandidateStatus status) {
  switch (status) {
    case CandidateStatus::RejectedComplex: return "RejectedComplex";
    case CandidateStatus::RejectedRange: return "RejectedRange";
    case CandidateStatus::RejectedInterval: return "RejectedInterval";
    case CandidateStatus::RejectedDegenerate: return "RejectedDegenerate";
    case CandidateStatus::RejectedNegativeGain: return "RejectedNegativeGain";
    case CandidateStatus::RejectedVerification: return "RejectedVerification";
    case CandidateStatus::Accepted: return "Accepted";
  }
  return "Unknown";
}

std::string to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::GloballyIdentifiable: return "GloballyIdentifiable";
    case Verdict::Identifiable: return "Identifiable";
    case Verdict::Unidentifiable: return "Unidentifiable";
    case Verdict::NoValidSolution: return "NoValidSolution";
  }
  return "Unknown";
}

}  // namespace foecm
