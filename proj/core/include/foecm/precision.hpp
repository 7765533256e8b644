#pragma once

#include <memory>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace foecm {

/**
 * Arbitrary-precision real number.
 *
 * Backed by MPFR with a run-time selectable mantissa size.  Freshly
 * constructed values (including the temporaries produced by arithmetic)
 * take the precision that is active on the current thread, so every
 * thread doing numeric work must call PrecisionContext::activate()
 * before touching Real values.  Copies keep the precision of their
 * source, which makes it safe to hand results across threads.
 */
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/**
 * Shared description of the working precision and the root-finder
 * budget.  Every polynomial carries a pointer to the context it was
 * built under; binary operations insist that both operands agree.
 *
 * Derived tolerances:
 *   - epsilon()        = 10^(-decimal_digits), the working resolution;
 *   - sqrt_epsilon()   = 10^(-decimal_digits/2), the threshold used to
 *                        call a residual "zero" when classifying roots
 *                        as real and when detecting degenerate divisors.
 */
class PrecisionContext {
 public:
  /**
   * Creates a context, activates it on the calling thread, and derives
   * the default root tolerance 10^(-0.8 * decimal_digits).
   *
   * @param decimal_digits working precision in decimal digits (>= 30).
   * @param max_iterations iteration budget for the root finder (>= 1).
   * @throws DomainError if either argument is out of range.
   */
  static std::shared_ptr<const PrecisionContext> create(int decimal_digits = 60,
                                                        int max_iterations = 500);

  /**
   * Same, but with an explicit root tolerance given as a decimal
   * string (parsed under the new precision).
   *
   * @throws DomainError if the tolerance does not parse or is not in (0, 1).
   */
  static std::shared_ptr<const PrecisionContext> create(int decimal_digits,
                                                        int max_iterations,
                                                        const std::string& root_tolerance);

  /** Working precision in decimal digits. */
  int decimal_digits() const { return decimal_digits_; }

  /** Iteration budget for the simultaneous root iteration. */
  int max_iterations() const { return max_iterations_; }

  /** Stopping tolerance for root corrections, 10^(-0.8 * digits). */
  const Real& root_tolerance() const { return root_tolerance_; }

  /** Working resolution, 10^(-digits). */
  const Real& epsilon() const { return epsilon_; }

  /** Half-precision threshold, 10^(-digits/2). */
  const Real& sqrt_epsilon() const { return sqrt_epsilon_; }

  /**
   * Makes this context's precision the default for Real values created
   * on the calling thread.  Call once per thread before numeric work.
   */
  void activate() const;

  /** Contexts are interchangeable when all their knobs agree. */
  friend bool operator==(const PrecisionContext& a, const PrecisionContext& b) {
    return a.decimal_digits_ == b.decimal_digits_ &&
           a.max_iterations_ == b.max_iterations_ &&
           a.root_tolerance_ == b.root_tolerance_;
  }
  friend bool operator!=(const PrecisionContext& a, const PrecisionContext& b) {
    return !(a == b);
  }

 private:
  PrecisionContext() = default;

  int decimal_digits_ = 0;
  int max_iterations_ = 0;
  Real root_tolerance_;
  Real epsilon_;
  Real sqrt_epsilon_;
};

using ContextPtr = std::shared_ptr<const PrecisionContext>;

/** Convenience: pow(10, e) at the precision active on this thread. */
Real pow10(const Real& exponent);

}  // namespace foecm
