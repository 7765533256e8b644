#pragma once

#include "foecm/precision.hpp"

namespace foecm {

/**
 * Complex number over Real.
 *
 * std::complex is only specified for built-in floating-point types, so
 * the handful of complex operations the root finder and the impedance
 * evaluator need are spelled out here directly.
 */
struct ComplexVal {
  Real re;
  Real im;

  ComplexVal() : re(0), im(0) {}
  explicit ComplexVal(Real real) : re(std::move(real)), im(0) {}
  ComplexVal(Real real, Real imag) : re(std::move(real)), im(std::move(imag)) {}

  ComplexVal& operator+=(const ComplexVal& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  ComplexVal& operator-=(const ComplexVal& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  ComplexVal& operator*=(const ComplexVal& o) {
    const Real r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  ComplexVal& operator/=(const ComplexVal& o) {
    const Real d = o.re * o.re + o.im * o.im;
    const Real r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
  }
};

inline ComplexVal operator+(ComplexVal a, const ComplexVal& b) { return a += b; }
inline ComplexVal operator-(ComplexVal a, const ComplexVal& b) { return a -= b; }
inline ComplexVal operator*(ComplexVal a, const ComplexVal& b) { return a *= b; }
inline ComplexVal operator/(ComplexVal a, const ComplexVal& b) { return a /= b; }
inline ComplexVal operator-(const ComplexVal& a) { return {-a.re, -a.im}; }

inline bool operator==(const ComplexVal& a, const ComplexVal& b) {
  return a.re == b.re && a.im == b.im;
}
inline bool operator!=(const ComplexVal& a, const ComplexVal& b) { return !(a == b); }

/** Squared modulus |z|^2 (cheaper than abs, no square root). */
inline Real norm(const ComplexVal& z) { return z.re * z.re + z.im * z.im; }

/** Modulus |z|. */
inline Real abs(const ComplexVal& z) { return sqrt(norm(z)); }

inline ComplexVal conj(const ComplexVal& z) { return {z.re, -z.im}; }

}  // namespace foecm
