#pragma once

#include <gmpxx.h>

#include <complex>

#include "parteq/quadfloat.hpp"

namespace parteq::specialfn {

/* exp(2 pi i j / b), stored in lowest terms: 0 <= j < b, gcd(j, b) = 1.
 * Reduction happens in the constructor, so b is always the exact order. */
struct RootOfUnity {
  int j, b;

  RootOfUnity(int j_, int b_);

  bool is_one() const { return b == 1; }
  RootOfUnity power(int k) const {
    return {static_cast<int>((static_cast<long>(j) * k) % b), b};
  }
  RootOfUnity inverse() const { return {b - j, b}; }
  std::complex<double> value() const;
  qcomplex value_q() const;

  friend bool operator==(const RootOfUnity& a, const RootOfUnity& b_) {
    return a.j == b_.j && a.b == b_.b;
  }
};

/* Value with an error estimate.  abs_error is an a-priori bound when
 * rigorous is set, otherwise a documented heuristic. */
struct SpecialValue {
  std::complex<double> value;
  double abs_error;
  bool rigorous;
};

/* Bernoulli numbers B_n as exact rationals (B_1 = -1/2), cached. */
const mpq_class& bernoulli_number(int n);

/* B_n(x) evaluated exactly over the rationals. */
mpq_class bernoulli_poly_exact(int n, const mpq_class& x);

/* B_n(x): the double x is converted to an exact rational, the polynomial is
 * evaluated exactly and the result rendered back.  n <= 60. */
double bernoulli_poly(int n, double x);
qreal bernoulli_poly_q(int n, const mpq_class& x);

/* zeta(2, a) for 0 < a <= 1. */
SpecialValue hurwitz_zeta2(double a);

/* zeta(-n, a) = -B_{n+1}(a)/(n+1) for n >= 0. */
double hurwitz_zeta_neg(int n, double a);

/* psi(p/q) via the Gauss finite formula, 1 <= p <= q. */
SpecialValue digamma_rational(int p, int q);

/* Li_2(zeta) at a root of unity: direct partial sum plus a Hurwitz-zeta
 * closed tail. */
SpecialValue dilog_root(const RootOfUnity& zeta);

/* Gamma(x) for 0 < x <= 170: fixed Lanczos rational coefficients on the
 * base interval plus the recurrence. */
SpecialValue gamma_real(double x);

/* Quad-precision cores shared with the asymptotic modules. */
qreal hurwitz_zeta2_q(qreal a);       // any a > 0
qreal digamma_rational_q(int p, int q);
qreal digamma_real_q(qreal x);        // x > 0, recurrence + asymptotic series
qcomplex dilog_root_q(const RootOfUnity& zeta);

/* Exact conversions used across modules. */
qreal mpq_to_qreal(const mpq_class& x);
qreal mpz_to_qreal(const mpz_class& x);

}  // namespace parteq::specialfn
