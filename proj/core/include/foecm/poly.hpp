#pragma once

#include <cstddef>
#include <vector>

#include "foecm/complex.hpp"
#include "foecm/precision.hpp"

namespace foecm {

/**
 * Dense univariate polynomial with Real coefficients.
 *
 * Coefficients are stored in ascending order of the power of the
 * indeterminate: coeffs()[k] multiplies z^k.  Exactly-zero leading
 * coefficients are trimmed on construction so degree() reflects the
 * true degree; the zero polynomial has an empty coefficient vector and
 * degree -1.  Every polynomial carries the precision context it was
 * built under, and binary operations reject mixed contexts.
 */
class RealPoly {
 public:
  /**
   * @param coeffs coefficients in ascending power order.
   * @param ctx precision context the coefficients were computed under.
   * @throws DomainError if ctx is null.
   */
  RealPoly(std::vector<Real> coeffs, ContextPtr ctx);

  /** The zero polynomial over ctx. */
  explicit RealPoly(ContextPtr ctx) : RealPoly(std::vector<Real>{}, std::move(ctx)) {}

  /** Degree of the polynomial; -1 for the zero polynomial. */
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }

  bool is_zero() const { return coeffs_.empty(); }

  /** Ascending coefficients; empty for the zero polynomial. */
  const std::vector<Real>& coeffs() const { return coeffs_; }

  /** Coefficient of z^k; zero beyond the degree. */
  const Real& coeff(std::size_t k) const;

  /** Leading (highest-power) coefficient. @throws DomainError on zero poly. */
  const Real& leading() const;

  const ContextPtr& context() const { return ctx_; }

 private:
  std::vector<Real> coeffs_;
  ContextPtr ctx_;
};

/** p + q. @throws DomainError if the contexts differ. */
RealPoly poly_add(const RealPoly& p, const RealPoly& q);

/** p - q. @throws DomainError if the contexts differ. */
RealPoly poly_sub(const RealPoly& p, const RealPoly& q);

/** p * q by dense convolution. @throws DomainError if the contexts differ. */
RealPoly poly_mul(const RealPoly& p, const RealPoly& q);

/** c * p. */
RealPoly poly_scale(const RealPoly& p, const Real& c);

/** Horner evaluation of p at a real point. */
Real poly_eval(const RealPoly& p, const Real& x);

/** Horner evaluation of p at a complex point. */
ComplexVal poly_eval(const RealPoly& p, const ComplexVal& z);

/** Formal derivative dp/dz. */
RealPoly poly_derivative(const RealPoly& p);

/**
 * Finds all complex roots of p by the Aberth–Ehrlich simultaneous
 * iteration, counted with multiplicity (degree(p) results, unordered).
 *
 * Starting points sit on a circle of radius 1 + max|c_k|/|c_lead|
 * (every root lies strictly inside by the Cauchy bound).  A root is
 * accepted once its correction falls below root_tolerance * (1 + |z|)
 * or its residual is at the evaluation round-off floor, whichever
 * comes first; the latter keeps clustered roots from stalling the
 * iteration at an unreachable tolerance.
 *
 * @throws DomainError if degree(p) < 1.
 * @throws ConvergenceError if the iteration budget is exhausted; the
 *         message carries the worst remaining residual.
 */
std::vector<ComplexVal> find_roots(const RealPoly& p);

/**
 * Extracts the real parts of the roots whose imaginary part is below
 * im_threshold in magnitude, sorted ascending.
 *
 * @param roots root approximations as returned by find_roots.
 * @param im_threshold realness cut-off (typically ctx->sqrt_epsilon()).
 */
std::vector<Real> classify_real_roots(const std::vector<ComplexVal>& roots,
                                      const Real& im_threshold);

}  // namespace foecm
