#pragma once

#include <stdexcept>
#include <string>

namespace foecm {

/** Base class for all errors raised by the library. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/**
 * A value violated a documented precondition or model invariant
 * (e.g. a fractional order outside (0, 1), a non-positive capacitance,
 * or polynomials carrying different precision contexts).
 */
class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(what) {}
};

/**
 * The iterative root finder failed to reach the requested tolerance
 * within the configured iteration budget.  The message reports the
 * iteration count and the worst residual at the point of failure.
 */
class ConvergenceError : public Error {
 public:
  explicit ConvergenceError(const std::string& what) : Error(what) {}
};

/**
 * The transfer function does not have the algebraic structure the
 * identifiability reduction relies on (e.g. the candidate polynomial
 * degenerates to zero, or the CPE gain sum vanishes).  This signals a
 * malformed or out-of-class input rather than a numerical failure.
 */
class DegenerateStructureError : public Error {
 public:
  explicit DegenerateStructureError(const std::string& what) : Error(what) {}
};

/** An input file could not be parsed or failed schema validation. */
class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(what) {}
};

}  // namespace foecm
