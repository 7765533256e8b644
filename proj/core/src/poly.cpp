#include "foecm/poly.hpp"

#include <algorithm>
#include <utility>

#include "foecm/errors.hpp"

namespace foecm {

namespace {

const Real kZero{0};

void require_same_context(const RealPoly& p, const RealPoly& q, const char* op) {
  if (!p.context() || !q.context() || *p.context() != *q.context()) {
    throw DomainError(std::string(op) + ": operands carry different precision contexts");
  }
}

}  // namespace

RealPoly::RealPoly(std::vector<Real> coeffs, ContextPtr ctx)
    : coeffs_(std::move(coeffs)), ctx_(std::move(ctx)) {
  if (!ctx_) {
    throw DomainError("RealPoly: precision context must not be null");
  }
  while (!coeffs_.empty() && coeffs_.back() == 0) {
    coeffs_.pop_back();
  }
}

const Real& RealPoly::coeff(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : kZero;
}

const Real& RealPoly::leading() const {
  if (coeffs_.empty()) {
    throw DomainError("RealPoly::leading: the zero polynomial has no leading coefficient");
  }
  return coeffs_.back();
}

RealPoly poly_add(const RealPoly& p, const RealPoly& q) {
  require_same_context(p, q, "poly_add");
  std::vector<Real> out(std::max(p.coeffs().size(), q.coeffs().size()), Real(0));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = p.coeff(k) + q.coeff(k);
  }
  return RealPoly(std::move(out), p.context());
}

RealPoly poly_sub(const RealPoly& p, const RealPoly& q) {
  require_same_context(p, q, "poly_sub");
  std::vector<Real> out(std::max(p.coeffs().size(), q.coeffs().size()), Real(0));
  for (std::size_t k = 0; k < out.size(); ++k) {
    out[k] = p.coeff(k) - q.coeff(k);
  }
  return RealPoly(std::move(out), p.context());
}

RealPoly poly_mul(const RealPoly& p, const RealPoly& q) {
  require_same_context(p, q, "poly_mul");
  if (p.is_zero() || q.is_zero()) {
    return RealPoly(p.context());
  }
  std::vector<Real> out(p.coeffs().size() + q.coeffs().size() - 1, Real(0));
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) {
    for (std::size_t j = 0; j < q.coeffs().size(); ++j) {
      out[i + j] += p.coeffs()[i] * q.coeffs()[j];
    }
  }
  return RealPoly(std::move(out), p.context());
}

RealPoly poly_scale(const RealPoly& p, const Real& c) {
  std::vector<Real> out;
  out.reserve(p.coeffs().size());
  for (const Real& a : p.coeffs()) {
    out.push_back(a * c);
  }
  return RealPoly(std::move(out), p.context());
}

Real poly_eval(const RealPoly& p, const Real& x) {
  Real acc(0);
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    acc = acc * x + *it;
  }
  return acc;
}

ComplexVal poly_eval(const RealPoly& p, const ComplexVal& z) {
  ComplexVal acc;
  for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it) {
    acc = acc * z + ComplexVal(*it);
  }
  return acc;
}

RealPoly poly_derivative(const RealPoly& p) {
  if (p.degree() < 1) {
    return RealPoly(p.context());
  }
  std::vector<Real> out;
  out.reserve(p.coeffs().size() - 1);
  for (std::size_t k = 1; k < p.coeffs().size(); ++k) {
    out.push_back(p.coeffs()[k] * static_cast<int>(k));
  }
  return RealPoly(std::move(out), p.context());
}

std::vector<Real> classify_real_roots(const std::vector<ComplexVal>& roots,
                                      const Real& im_threshold) {
  std::vector<Real> reals;
  for (const ComplexVal& z : roots) {
    if (abs(z.im) < im_threshold) {
      reals.push_back(z.re);
    }
  }
  std::sort(reals.begin(), reals.end());
  return reals;
}

}  // namespace foecm
