#include "foecm/precision.hpp"

#include <string>

#include "foecm/errors.hpp"

namespace foecm {

std::shared_ptr<const PrecisionContext> PrecisionContext::create(int decimal_digits,
                                                                 int max_iterations) {
  if (decimal_digits < 30) {
    throw DomainError("PrecisionContext: decimal_digits must be at least 30, got " +
                      std::to_string(decimal_digits));
  }
  if (max_iterations < 1) {
    throw DomainError("PrecisionContext: max_iterations must be positive, got " +
                      std::to_string(max_iterations));
  }

  auto ctx = std::shared_ptr<PrecisionContext>(new PrecisionContext());
  ctx->decimal_digits_ = decimal_digits;
  ctx->max_iterations_ = max_iterations;

  // Derived tolerances must be computed under the precision they describe.
  ctx->activate();
  ctx->root_tolerance_ = pow10(Real(-8 * decimal_digits) / 10);
  ctx->epsilon_ = pow10(Real(-decimal_digits));
  ctx->sqrt_epsilon_ = pow10(Real(-decimal_digits) / 2);
  return ctx;
}

std::shared_ptr<const PrecisionContext> PrecisionContext::create(
    int decimal_digits, int max_iterations, const std::string& root_tolerance) {
  auto ctx = create(decimal_digits, max_iterations);
  Real tol;
  try {
    tol = Real(root_tolerance);
  } catch (const std::exception&) {
    throw DomainError("PrecisionContext: root tolerance '" + root_tolerance +
                      "' is not a valid decimal number");
  }
  if (!(tol > 0 && tol < 1)) {
    throw DomainError("PrecisionContext: root tolerance must lie in (0, 1)");
  }
  auto patched = std::shared_ptr<PrecisionContext>(new PrecisionContext(*ctx));
  patched->root_tolerance_ = tol;
  return patched;
}

void PrecisionContext::activate() const {
  Real::default_precision(static_cast<unsigned>(decimal_digits_));
}

Real pow10(const Real& exponent) { return pow(Real(10), exponent); }

}  // namespace foecm
