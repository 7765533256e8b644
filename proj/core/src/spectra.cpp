#include "foecm/spectra.hpp"

#include <cstddef>

#include "foecm/complex.hpp"
#include "foecm/errors.hpp"

namespace foecm {

namespace {

// (jw)^alpha on the principal branch for w > 0.
ComplexVal j_omega_pow(const Real& omega, const Real& alpha) {
  const Real half_pi = 2 * atan(Real(1));
  const Real mag = pow(omega, alpha);
  const Real phase = alpha * half_pi;
  return {mag * cos(phase), mag * sin(phase)};
}

}  // namespace

ImpedancePoint impedance_at(const ModelParams& params, const Real& omega) {
  params.validate();
  if (!(omega > 0)) {
    throw DomainError("impedance_at: omega must be strictly positive");
  }

  const ComplexVal one(Real(1));
  const ComplexVal branch =
      ComplexVal(params.r1) /
      (one + ComplexVal(params.r1 * params.c1) * j_omega_pow(omega, params.alpha1));
  const ComplexVal series_cpe = one / (ComplexVal(params.c2) * j_omega_pow(omega, params.alpha2));

  const ComplexVal z = ComplexVal(params.r_inf) + branch + series_cpe;
  return {omega, z.re, z.im};
}

std::vector<ImpedancePoint> sweep_spectrum(const ModelParams& params,
                                           const std::vector<Real>& grid) {
  params.validate();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!(grid[k] > 0)) {
      throw DomainError("sweep_spectrum: frequencies must be strictly positive");
    }
    if (k > 0 && !(grid[k] > grid[k - 1])) {
      throw DomainError("sweep_spectrum: frequencies must be strictly ascending");
    }
  }
  std::vector<ImpedancePoint> out;
  out.reserve(grid.size());
  for (const Real& omega : grid) {
    out.push_back(impedance_at(params, omega));
  }
  return out;
}

std::vector<Real> log_grid(const Real& lo, const Real& hi, int n) {
  if (!(lo > 0) || !(hi > lo)) {
    throw DomainError("log_grid: bounds must satisfy 0 < lo < hi");
  }
  if (n < 2) {
    throw DomainError("log_grid: at least two points are required");
  }
  const Real ratio = pow(hi / lo, Real(1) / (n - 1));
  std::vector<Real> grid;
  grid.reserve(static_cast<std::size_t>(n));
  Real w = lo;
  for (int k = 0; k < n - 1; ++k) {
    grid.push_back(w);
    w *= ratio;
  }
  grid.push_back(hi);  // pin the endpoint against accumulated rounding
  return grid;
}

}  // namespace foecm
