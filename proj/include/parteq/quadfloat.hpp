#pragma once

#include <quadmath.h>

#include <cmath>
#include <complex>
#include <string>

namespace parteq {

using qreal = __float128;

inline constexpr qreal Q_PI = 3.14159265358979323846264338327950288419717Q;
inline constexpr qreal Q_EULER = 0.577215664901532860606512090082402431042159Q;

/* Minimal complex type over __float128.  quadmath's C _Complex is clumsy to
 * use from C++, and only a handful of operations are needed. */
struct qcomplex {
  qreal re{0}, im{0};

  qcomplex() = default;
  qcomplex(qreal r) : re(r) {}
  qcomplex(qreal r, qreal i) : re(r), im(i) {}
  explicit qcomplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  qcomplex& operator+=(const qcomplex& o) { re += o.re; im += o.im; return *this; }
  qcomplex& operator-=(const qcomplex& o) { re -= o.re; im -= o.im; return *this; }
  qcomplex& operator*=(const qcomplex& o) {
    const qreal r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
};

inline qcomplex operator+(qcomplex a, const qcomplex& b) { return a += b; }
inline qcomplex operator-(qcomplex a, const qcomplex& b) { return a -= b; }
inline qcomplex operator-(const qcomplex& a) { return {-a.re, -a.im}; }
inline qcomplex operator*(qcomplex a, const qcomplex& b) { return a *= b; }
inline qcomplex operator*(qreal s, qcomplex a) { return {s * a.re, s * a.im}; }

inline qcomplex operator/(const qcomplex& a, const qcomplex& b) {
  const qreal d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline qcomplex operator/(const qcomplex& a, qreal s) { return {a.re / s, a.im / s}; }

inline qreal abs(const qcomplex& z) { return hypotq(z.re, z.im); }
inline qcomplex conj(const qcomplex& z) { return {z.re, -z.im}; }

inline qcomplex exp(const qcomplex& z) {
  const qreal m = expq(z.re);
  return {m * cosq(z.im), m * sinq(z.im)};
}

/* Principal branch. */
inline qcomplex log(const qcomplex& z) {
  return {logq(abs(z)), atan2q(z.im, z.re)};
}

inline qcomplex pow(const qcomplex& z, qreal p) { return exp(p * log(z)); }

inline std::complex<double> to_complex(const qcomplex& z) {
  return {static_cast<double>(z.re), static_cast<double>(z.im)};
}

inline std::string qformat(qreal x, int digits = 34) {
  char buf[128];
  quadmath_snprintf(buf, sizeof buf, "%.*Qg", digits, x);
  return buf;
}

/* Integer-valued qreal to decimal digits (used after rounding). */
inline std::string qinteger_string(qreal x) {
  char buf[128];
  quadmath_snprintf(buf, sizeof buf, "%.0Qf", x);
  return buf;
}

}  // namespace parteq
