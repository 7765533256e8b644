#pragma once

#include <vector>

#include "foecm/gl_model.hpp"
#include "foecm/precision.hpp"

namespace foecm {

/** Complex impedance of the circuit at one angular frequency. */
struct ImpedancePoint {
  Real omega;
  Real z_re;
  Real z_im;
};

/**
 * Continuous-frequency impedance of the two-CPE circuit,
 *
 *   Z(jw) = r_inf + r1 / (1 + r1 c1 (jw)^alpha1) + 1 / (c2 (jw)^alpha2),
 *
 * with (jw)^alpha = w^alpha (cos(alpha pi/2) + j sin(alpha pi/2)).
 *
 * @param omega angular frequency, > 0.
 * @throws DomainError if params are invalid or omega <= 0.
 */
ImpedancePoint impedance_at(const ModelParams& params, const Real& omega);

/**
 * Evaluates the impedance over a frequency grid, preserving order.
 * An empty grid yields an empty list.
 *
 * @param grid strictly positive, strictly ascending angular frequencies.
 * @throws DomainError on a non-positive or out-of-order entry.
 */
std::vector<ImpedancePoint> sweep_spectrum(const ModelParams& params,
                                           const std::vector<Real>& grid);

/**
 * Geometrically spaced grid of n points from lo to hi inclusive.
 *
 * @throws DomainError unless 0 < lo < hi and n >= 2.
 */
std::vector<Real> log_grid(const Real& lo, const Real& hi, int n);

}  // namespace foecm
