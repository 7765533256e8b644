#pragma once

#include <array>
#include <vector>

#include "foecm/precision.hpp"

namespace foecm {

/**
 * Parameters of the two-CPE fractional-order equivalent circuit:
 * a series resistance r_inf, a parallel (r1, CPE(c1, alpha1)) branch,
 * and a series CPE(c2, alpha2), discretized with sampling period ts
 * and Grünwald–Letnikov memory horizon `horizon`.
 */
struct ModelParams {
  Real r_inf;    ///< series (high-frequency) resistance, > 0
  Real r1;       ///< branch resistance, > 0
  Real c1;       ///< branch CPE pseudo-capacitance, > 0
  Real alpha1;   ///< branch CPE order, in (0, 1)
  Real c2;       ///< series CPE pseudo-capacitance, > 0
  Real alpha2;   ///< series CPE order, in (0, 1)
  Real ts;       ///< sampling period, > 0
  int horizon;   ///< GL truncation horizon T, >= 7
  ContextPtr ctx;

  /** @throws DomainError naming the first violated invariant. */
  void validate() const;
};

/**
 * The discretized state recursion in shift-operator form: each state
 * carries a feedback row a_i = (a_{i,0}, ..., a_{i,T}), an input gain
 * b_i, and the direct feed-through d.
 *
 * Row heads encode the circuit: a1[0] = alpha1 - ts^alpha1/(r1*c1),
 * a2[0] = alpha2; every deeper entry is the pure Grünwald–Letnikov
 * binomial tail of the corresponding order.
 */
struct GLSeries {
  Real d;               ///< feed-through, = r_inf
  Real b1;              ///< input gain of state 1, = ts^alpha1 / c1
  Real b2;              ///< input gain of state 2, = ts^alpha2 / c2
  std::vector<Real> a1; ///< feedback row of state 1, length T + 1
  std::vector<Real> a2; ///< feedback row of state 2, length T + 1
  ContextPtr ctx;

  int horizon() const { return static_cast<int>(a1.size()) - 1; }
};

/**
 * The scalar transfer function H(z) = F(z) / G(z) of the discretized
 * model, both polynomials of degree 2T + 2 with ascending storage.
 * G is monic and its leading 1 is implicit: f has length 2T + 3 while
 * g holds only the 2T + 2 coefficients below the leading term.  F's
 * leading coefficient f[2T+2] is the feed-through d.
 */
struct MonicTF {
  std::vector<Real> f;  ///< numerator coefficients, ascending, length 2T + 3
  std::vector<Real> g;  ///< denominator below the implicit monic 1, length 2T + 2
  ContextPtr ctx;

  int horizon() const { return (static_cast<int>(f.size()) - 3) / 2; }
};

/**
 * The handful of leading transfer-function coefficients the
 * identifiability reduction consumes, indexed from the top:
 * f[k] = f_{2T+1-k} and g[k] = g_{2T+1-k}.  g carries two extra
 * entries (g_{2T-3}, g_{2T-4}) that only appear in reports.
 */
struct IdentCoeffs {
  Real d;                ///< numerator leading coefficient f_{2T+2}
  std::array<Real, 4> f; ///< f_{2T+1}, f_{2T}, f_{2T-1}, f_{2T-2}
  std::array<Real, 6> g; ///< g_{2T+1}, g_{2T}, ..., g_{2T-4}
  ContextPtr ctx;
};

/**
 * Grünwald–Letnikov binomial tail for order alpha: the coefficients
 * a_j = -(-1)^(j+1) * binom(alpha, j+1) for j = 1..T, generated by the
 * two-term recurrence
 *
 *   a_1 = alpha (1 - alpha) / 2,
 *   a_{j+1} = -(alpha - j - 1) / (j + 2) * a_j.
 *
 * @param alpha fractional order, in (0, 1).
 * @param T memory horizon, >= 1.
 * @returns the T tail coefficients, index 0 holding a_1.
 * @throws DomainError on out-of-range arguments.
 */
std::vector<Real> gl_binomial_series(const Real& alpha, int T, const ContextPtr& ctx);

/**
 * Builds the shift-form recursion for the given circuit parameters.
 *
 * @throws DomainError if params fail validate().
 */
GLSeries build_gl_series(const ModelParams& params);

/**
 * Expands the recursion into the scalar transfer function.  With
 * D_i(z) = z^(T+1) - sum_j a_{i,j} z^(T-j), the denominator is the
 * product D1 * D2 (monic by construction) and the numerator is
 * d*D1*D2 + b1 z^T D2 + b2 z^T D1.
 */
MonicTF expand_monic_tf(const GLSeries& series);

/**
 * Extracts the leading coefficients used by the reduction.
 *
 * @throws DomainError if the transfer function is shorter than the
 *         horizon-7 minimum or its denominator is not monic.
 */
IdentCoeffs head_coeffs(const MonicTF& tf);

}  // namespace foecm
