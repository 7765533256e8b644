#include <algorithm>
#include <cstddef>
#include <sstream>
#include <vector>

#include "foecm/errors.hpp"
#include "foecm/poly.hpp"

namespace foecm {

namespace {

struct EvalResult {
  ComplexVal value;       // p(z)
  ComplexVal derivative;  // p'(z)
  Real magnitude_bound;   // sum |c_k| |z|^k, for the round-off floor
};

// Horner evaluation of p and p' together, plus the coefficient-magnitude
// bound needed to decide when a residual has hit evaluation round-off.
EvalResult eval_with_derivative(const std::vector<Real>& monic, const ComplexVal& z) {
  EvalResult r;
  const Real az = abs(z);
  Real bound(0);
  for (auto it = monic.rbegin(); it != monic.rend(); ++it) {
    r.derivative = r.derivative * z + r.value;
    r.value = r.value * z + ComplexVal(*it);
    bound = bound * az + abs(*it);
  }
  r.magnitude_bound = bound;
  return r;
}

}  // namespace

std::vector<ComplexVal> find_roots(const RealPoly& p) {
  const int n = p.degree();
  if (n < 1) {
    throw DomainError("find_roots: polynomial must have degree >= 1");
  }
  const PrecisionContext& ctx = *p.context();

  // Work on the monic normalization; roots are unchanged.
  std::vector<Real> monic(p.coeffs());
  const Real lead = monic.back();
  for (Real& c : monic) {
    c /= lead;
  }

  if (n == 1) {
    return {ComplexVal(-monic[0])};
  }

  // Cauchy bound: every root satisfies |z| < 1 + max |c_k|.
  Real radius(1);
  for (int k = 0; k < n; ++k) {
    radius = std::max(radius, abs(monic[k]));
  }
  radius += 1;

  // Starting points spread over the bounding circle.  The constant
  // angular offset keeps the configuration asymmetric to the real
  // axis, which would otherwise be a trap for real-coefficient input.
  const Real two_pi = 8 * atan(Real(1));
  std::vector<ComplexVal> z(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const Real theta = two_pi * k / n + Real(2) / 5;
    z[static_cast<std::size_t>(k)] = {radius * cos(theta), radius * sin(theta)};
  }

  const Real& tol = ctx.root_tolerance();
  // fl(p(z)) differs from p(z) by at most ~2(n+1) units of round-off
  // scaled by sum |c_k||z|^k; below twice that the residual is noise.
  const Real floor_factor = ctx.epsilon() * (4 * (n + 1));

  std::vector<bool> settled(static_cast<std::size_t>(n), false);
  for (int iter = 0; iter < ctx.max_iterations(); ++iter) {
    bool all_settled = true;
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (settled[k]) {
        continue;
      }
      const EvalResult e = eval_with_derivative(monic, z[k]);
      if (abs(e.value) <= e.magnitude_bound * floor_factor) {
        settled[k] = true;  // residual at round-off: no better value exists
        continue;
      }
      if (norm(e.derivative) == 0) {
        // Stationary point: nudge off it and retry next sweep.
        z[k].re += tol + ctx.sqrt_epsilon();
        all_settled = false;
        continue;
      }
      const ComplexVal newton = e.value / e.derivative;
      ComplexVal repulsion;
      for (std::size_t j = 0; j < z.size(); ++j) {
        if (j != k) {
          repulsion += ComplexVal(Real(1)) / (z[k] - z[j]);
        }
      }
      const ComplexVal denom = ComplexVal(Real(1)) - newton * repulsion;
      const ComplexVal step = (norm(denom) == 0) ? newton : newton / denom;
      z[k] -= step;
      if (abs(step) <= tol * (1 + abs(z[k]))) {
        settled[k] = true;
      } else {
        all_settled = false;
      }
    }
    if (all_settled) {
      return z;
    }
  }

  Real worst(0);
  for (const ComplexVal& zk : z) {
    worst = std::max(worst, abs(poly_eval(p, zk)));
  }
  std::ostringstream msg;
  msg << "find_roots: Aberth iteration did not converge within " << ctx.max_iterations()
      << " iterations (degree " << n << ", worst residual " << worst.str(6) << ")";
  throw ConvergenceError(msg.str());
}

}  // namespace foecm
