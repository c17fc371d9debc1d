#pragma once

#include <gmpxx.h>

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "parteq/quadfloat.hpp"

namespace parteq::emachine {

/* A point of the open cone |arg z| <= theta < pi/2, Re z > 0. */
struct SectorPoint {
  std::complex<double> z;
  double theta;

  /* theta < 0 means "tightest sector containing z". */
  explicit SectorPoint(std::complex<double> z, double theta = -1.0);

  qcomplex zq() const { return qcomplex(z); }
};

/* A function with a Laurent expansion sum_{n >= n0} c_n x^n at 0+,
 * exponential decay at +inf, together with its evaluator.  The decay
 * envelope |f(u)| <= decay_m e^{-decay_lam Re u} for Re u >= 1 is what
 * tail certifications rest on; a spec without one (decay_lam <= 0)
 * cannot be summed or integrated rigorously. */
struct LaurentSpec {
  int n0;                     // lowest order, >= -2
  int top;                    // highest stored order
  std::vector<qreal> c;       // c[n - n0] for n0 <= n <= top
  std::vector<mpq_class> c_exact;  // same coefficients, exact
  std::function<qcomplex(const qcomplex&)> f;
  qreal decay_m = 0;
  qreal decay_lam = 0;

  qreal coeff(int n) const;   // 0 below n0, throws above top
};

/* Laurent data of f(x) = e^{-ax} / (x (1 - e^{-cx})), 0 < a <= c,
 * computed exactly from the Bernoulli generating function.  2 <= K <= 20. */
LaurentSpec laurent_coeffs_f(int a, int c, int K);

/* The regularized integral
 *   I*_{f,A} = int_0^inf ( f(u) - sum_{n0 <= n <= -2} c_n u^n
 *                          - c_{-1} e^{-Au}/u ) du,
 * adaptive embedded Gauss pair in quad precision, absolute tolerance tol.
 * Requires spec.top >= 8 (the integrand switches to the series below
 * u = 1e-3, where direct evaluation cancels). */
qcomplex istar(const LaurentSpec& spec, qreal A, qreal tol);

/* Term breakdown of the asymptotic evaluation. */
struct EMResult {
  qcomplex value;
  qcomplex singular_term;            // c_{-2} zeta(2, a) / z^2
  qcomplex istar_term;               // I*_{f,A} / z
  qcomplex log_term;                 // -(c_{-1}/z)(log(Az) + psi(a) + gamma)
  qreal psi_plus_gamma;              // exactly 0 when a_shift == 1
  std::vector<qcomplex> power_terms; // n-th entry: c_n zeta(-n, a) z^n
  qreal A;

  std::complex<double> value_d() const { return to_complex(value); }
};

/* Asymptotic value of sum_{n >= 0} f((n + a) z) on the sector, truncated
 * at z^order.  a_shift in (0, 1]; order <= spec.top. */
EMResult em_asymptotic_sum(const LaurentSpec& spec, double a_shift,
                           const SectorPoint& z, int order, double A = 1.0);

struct SumStats {
  long terms = 0;
  qreal tail_bound = 0;
};

/* sum_{n >= 0} f((n + a) z) by direct summation; terminates when the
 * decay envelope certifies the remaining tail <= tol (absolute rounding
 * error of the summation itself is not included in the bound).  Budget
 * overrun raises certification_error. */
qcomplex direct_sum(const LaurentSpec& spec, double a_shift,
                    const SectorPoint& z, qreal tol,
                    SumStats* stats = nullptr);

}  // namespace parteq::emachine
