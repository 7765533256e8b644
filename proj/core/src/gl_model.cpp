#include "foecm/gl_model.hpp"

#include <cstddef>
#include <string>
#include <utility>

#include "foecm/errors.hpp"
#include "foecm/poly.hpp"

namespace foecm {

namespace {

void require_positive(const Real& value, const char* name) {
  if (!(value > 0)) {
    throw DomainError("ModelParams: " + std::string(name) + " must be strictly positive");
  }
}

void require_unit_interval(const Real& value, const char* name) {
  if (!(value > 0 && value < 1)) {
    throw DomainError("ModelParams: " + std::string(name) + " must lie in the open interval (0, 1)");
  }
}

// D_i(z) = z^(T+1) - sum_{j=0..T} a_j z^(T-j), ascending storage.
RealPoly shift_denominator(const std::vector<Real>& a, const ContextPtr& ctx) {
  const std::size_t T1 = a.size();  // T + 1 terms
  std::vector<Real> c(T1 + 1, Real(0));
  c[T1] = 1;
  for (std::size_t j = 0; j < T1; ++j) {
    c[T1 - 1 - j] = -a[j];
  }
  return RealPoly(std::move(c), ctx);
}

}  // namespace

void ModelParams::validate() const {
  if (!ctx) {
    throw DomainError("ModelParams: precision context must not be null");
  }
  require_positive(r_inf, "r_inf");
  require_positive(r1, "r1");
  require_positive(c1, "c1");
  require_positive(c2, "c2");
  require_positive(ts, "ts");
  require_unit_interval(alpha1, "alpha1");
  require_unit_interval(alpha2, "alpha2");
  if (horizon < 7) {
    throw DomainError("ModelParams: horizon must be at least 7, got " + std::to_string(horizon));
  }
}

std::vector<Real> gl_binomial_series(const Real& alpha, int T, const ContextPtr& ctx) {
  if (!ctx) {
    throw DomainError("gl_binomial_series: precision context must not be null");
  }
  if (!(alpha > 0 && alpha < 1)) {
    throw DomainError("gl_binomial_series: alpha must lie in the open interval (0, 1)");
  }
  if (T < 1) {
    throw DomainError("gl_binomial_series: horizon must be at least 1, got " + std::to_string(T));
  }
  std::vector<Real> tail;
  tail.reserve(static_cast<std::size_t>(T));
  tail.push_back(alpha * (1 - alpha) / 2);
  for (int j = 1; j < T; ++j) {
    tail.push_back(-(alpha - j - 1) / (j + 2) * tail.back());
  }
  return tail;
}

GLSeries build_gl_series(const ModelParams& params) {
  params.validate();
  const int T = params.horizon;

  GLSeries s;
  s.ctx = params.ctx;
  s.d = params.r_inf;
  const Real ts_a1 = pow(params.ts, params.alpha1);
  const Real ts_a2 = pow(params.ts, params.alpha2);
  s.b1 = ts_a1 / params.c1;
  s.b2 = ts_a2 / params.c2;

  s.a1.reserve(static_cast<std::size_t>(T) + 1);
  s.a1.push_back(params.alpha1 - ts_a1 / (params.r1 * params.c1));
  for (Real& c : gl_binomial_series(params.alpha1, T, params.ctx)) {
    s.a1.push_back(std::move(c));
  }

  s.a2.reserve(static_cast<std::size_t>(T) + 1);
  s.a2.push_back(params.alpha2);
  for (Real& c : gl_binomial_series(params.alpha2, T, params.ctx)) {
    s.a2.push_back(std::move(c));
  }
  return s;
}

MonicTF expand_monic_tf(const GLSeries& series) {
  if (!series.ctx) {
    throw DomainError("expand_monic_tf: precision context must not be null");
  }
  if (series.a1.size() != series.a2.size() || series.a1.size() < 2) {
    throw DomainError("expand_monic_tf: feedback rows must share a length of at least 2");
  }
  const int T = series.horizon();
  const ContextPtr& ctx = series.ctx;

  const RealPoly d1 = shift_denominator(series.a1, ctx);
  const RealPoly d2 = shift_denominator(series.a2, ctx);
  const RealPoly den = poly_mul(d1, d2);

  // z^T as a factor for the cross terms.
  std::vector<Real> shift(static_cast<std::size_t>(T) + 1, Real(0));
  shift.back() = 1;
  const RealPoly zT(std::move(shift), ctx);

  RealPoly num = poly_scale(den, series.d);
  num = poly_add(num, poly_scale(poly_mul(zT, d2), series.b1));
  num = poly_add(num, poly_scale(poly_mul(zT, d1), series.b2));

  MonicTF tf;
  tf.ctx = ctx;
  // The degree is 2T + 2 by construction with a monic denominator, whose
  // leading 1 stays implicit: g stores the 2T + 2 lower coefficients only.
  tf.g.assign(2 * static_cast<std::size_t>(T) + 2, Real(0));
  tf.f.assign(2 * static_cast<std::size_t>(T) + 3, Real(0));
  for (std::size_t k = 0; k + 1 < den.coeffs().size(); ++k) {
    tf.g[k] = den.coeffs()[k];
  }
  for (std::size_t k = 0; k < num.coeffs().size(); ++k) {
    tf.f[k] = num.coeffs()[k];
  }
  return tf;
}

IdentCoeffs head_coeffs(const MonicTF& tf) {
  if (!tf.ctx) {
    throw DomainError("head_coeffs: precision context must not be null");
  }
  if (tf.f.size() != tf.g.size() + 1 || tf.horizon() < 7) {
    throw DomainError(
        "head_coeffs: transfer function must have numerator length 2T + 3, "
        "denominator length 2T + 2 with horizon >= 7");
  }
  const std::size_t top = tf.f.size() - 1;  // index of z^(2T+2)

  IdentCoeffs c;
  c.ctx = tf.ctx;
  c.d = tf.f[top];
  for (std::size_t k = 0; k < c.f.size(); ++k) {
    c.f[k] = tf.f[top - 1 - k];
  }
  for (std::size_t k = 0; k < c.g.size(); ++k) {
    c.g[k] = tf.g[top - 1 - k];
  }
  return c;
}

}  // namespace foecm
