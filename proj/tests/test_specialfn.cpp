#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>

#include "parteq/quadfloat.hpp"
#include "parteq/specialfn.hpp"

using namespace parteq;
using namespace parteq::specialfn;

namespace {

constexpr double kPi = std::numbers::pi;

qreal qparse(const char* s) { return strtoflt128(s, nullptr); }

double qdiff(qreal x, qreal y) { return static_cast<double>(fabsq(x - y)); }

std::complex<double> primitive_root(int j, int b) {
  return RootOfUnity(j, b).value();
}

}  // namespace

TEST_CASE("Bernoulli numbers match the classical table") {
  CHECK(bernoulli_number(0) == mpq_class(1));
  CHECK(bernoulli_number(1) == mpq_class(-1, 2));
  CHECK(bernoulli_number(2) == mpq_class(1, 6));
  CHECK(bernoulli_number(3) == mpq_class(0));
  CHECK(bernoulli_number(4) == mpq_class(-1, 30));
  CHECK(bernoulli_number(12) == mpq_class(-691, 2730));
  CHECK(bernoulli_number(13) == mpq_class(0));
}

TEST_CASE("Bernoulli polynomials: exact values and symmetry") {
  CHECK(bernoulli_poly_exact(1, mpq_class(1)) == mpq_class(1, 2));
  CHECK(bernoulli_poly_exact(3, mpq_class(1, 2)) == mpq_class(0));
  CHECK(bernoulli_poly_exact(2, mpq_class(1, 4)) == mpq_class(-1, 48));
  for (int n = 0; n <= 12; ++n) {
    const int sign = n % 2 == 0 ? 1 : -1;
    CHECK(bernoulli_poly_exact(n, mpq_class(1)) ==
          sign * bernoulli_number(n));
  }
  const mpq_class x(2, 7);
  const double xe = 2.0 / 7.0;
  const double want = static_cast<double>(bernoulli_poly_exact(5, x).get_d());
  CHECK(std::abs(bernoulli_poly(5, xe) - want) <= 1e-14);
  CHECK(qdiff(bernoulli_poly_q(5, x),
              mpq_to_qreal(bernoulli_poly_exact(5, x))) <= 1e-32);
}

TEST_CASE("Hurwitz zeta(2, a) against independent references") {
  CHECK(hurwitz_zeta2(1.0).value.real() ==
        doctest::Approx(kPi * kPi / 6).epsilon(1e-14));
  CHECK(hurwitz_zeta2(0.25).value.real() ==
        doctest::Approx(17.19732915450711073927).epsilon(1e-13));
  CHECK(hurwitz_zeta2(1.0 / 3).value.real() ==
        doctest::Approx(10.09559712542709408179).epsilon(1e-13));
  CHECK(hurwitz_zeta2(0.75).value.real() ==
        doctest::Approx(2.541879647671606498398).epsilon(1e-13));
  CHECK(hurwitz_zeta2(0.5).rigorous);
  CHECK(hurwitz_zeta2(0.5).abs_error > 0);
  CHECK_THROWS_AS(hurwitz_zeta2(0.0), std::domain_error);
  CHECK_THROWS_AS(hurwitz_zeta2(1.5), std::domain_error);

  CHECK(qdiff(hurwitz_zeta2_q(qparse("0.25")),
              qparse("17.19732915450711073927131911933522402151")) <= 1e-30);
  CHECK(qdiff(hurwitz_zeta2_q(qparse("0.3333333333333333333333333333333333333"
                                     "3")),
              qparse("10.09559712542709408179200409989251636052")) <= 1e-28);
  /* a > 1 via the recurrence built into the quad core */
  CHECK(qdiff(hurwitz_zeta2_q(qreal{2}), qparse("0.6449340668482264364724151666460251892")) <= 1e-30);
}

TEST_CASE("zeta at nonpositive integers ties to Bernoulli polynomials") {
  CHECK(hurwitz_zeta_neg(0, 0.25) == doctest::Approx(0.25).epsilon(1e-15));
  for (int n = 0; n <= 6; ++n) {
    const double a = 0.37;
    const double want = -bernoulli_poly(n + 1, a) / (n + 1);
    CHECK(hurwitz_zeta_neg(n, a) == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("digamma at rationals against independent references") {
  CHECK(digamma_rational(1, 1).value.real() ==
        doctest::Approx(-0.5772156649015328606065).epsilon(1e-14));
  CHECK(digamma_rational(1, 2).value.real() ==
        doctest::Approx(-1.963510026021423479441).epsilon(1e-14));
  CHECK(digamma_rational(1, 3).value.real() ==
        doctest::Approx(-3.132033780020806322996).epsilon(1e-14));
  CHECK(digamma_rational(2, 5).value.real() ==
        doctest::Approx(-2.561384544585116145731).epsilon(1e-14));
  CHECK(digamma_rational(5, 12).value.real() ==
        doctest::Approx(-2.444431257919160745929).epsilon(1e-14));
  CHECK_THROWS_AS(digamma_rational(0, 3), std::domain_error);
  CHECK_THROWS_AS(digamma_rational(4, 3), std::domain_error);

  CHECK(qdiff(digamma_rational_q(1, 3),
              qparse("-3.132033780020806322996419074287268854155")) <= 1e-30);
  CHECK(qdiff(digamma_rational_q(5, 12),
              qparse("-2.444431257919160745929319542015772505406")) <= 1e-30);
  CHECK(qdiff(digamma_rational_q(1, 1), -Q_EULER) <= 1e-33);
}

TEST_CASE("digamma quad core agrees with the rational closed form") {
  /* psi(x+n) = psi(x) + sum 1/(x+k) pushes small arguments into the
   * asymptotic regime; cross-check against Gauss values. */
  const qreal half = qreal{1} / 2;
  CHECK(qdiff(digamma_real_q(half), digamma_rational_q(1, 2)) <= 1e-23);
  CHECK(qdiff(digamma_real_q(qreal{1} / 3), digamma_rational_q(1, 3)) <=
        1e-23);
  const qreal at25 = digamma_rational_q(1, 2) + 2 + qreal{2} / 3;
  CHECK(qdiff(digamma_real_q(qreal{5} / 2), at25) <= 1e-23);
  CHECK_THROWS_AS(digamma_real_q(qreal{0}), std::domain_error);
}

TEST_CASE("dilogarithm at roots of unity against independent references") {
  const auto li2_i = dilog_root(RootOfUnity(1, 4));
  CHECK(li2_i.value.real() ==
        doctest::Approx(-0.2056167583560283045591).epsilon(1e-12));
  CHECK(li2_i.value.imag() ==
        doctest::Approx(0.9159655941772190150546).epsilon(1e-12));

  const auto li2_m1 = dilog_root(RootOfUnity(1, 2));
  CHECK(li2_m1.value.real() ==
        doctest::Approx(-0.8224670334241132182362).epsilon(1e-12));
  CHECK(std::abs(li2_m1.value.imag()) <= 1e-15);

  const auto li2_z3 = dilog_root(RootOfUnity(1, 3));
  CHECK(li2_z3.value.real() ==
        doctest::Approx(-0.5483113556160754788241).epsilon(1e-12));
  CHECK(li2_z3.value.imag() ==
        doctest::Approx(0.6766277376064357500141).epsilon(1e-12));

  const auto li2_z5 = dilog_root(RootOfUnity(1, 5));
  CHECK(li2_z5.value.real() ==
        doctest::Approx(0.06579736267392905745890).epsilon(1e-11));
  CHECK(li2_z5.value.imag() ==
        doctest::Approx(0.9973546913984147786673).epsilon(1e-12));

  const auto one = dilog_root(RootOfUnity(0, 1));
  CHECK(one.value.real() == doctest::Approx(kPi * kPi / 6).epsilon(1e-13));

  const qcomplex q_i = dilog_root_q(RootOfUnity(1, 4));
  CHECK(qdiff(q_i.re, qparse("-0.2056167583560283045590518958307531486524")) <=
        1e-25);
  CHECK(qdiff(q_i.im, qparse("0.9159655941772190150546035149323841107742")) <=
        1e-25);
  /* conjugate root gives the conjugate value */
  const qcomplex q_mi = dilog_root_q(RootOfUnity(3, 4));
  CHECK(qdiff(q_i.re, q_mi.re) <= 1e-30);
  CHECK(qdiff(q_i.im, -q_mi.im) <= 1e-30);
}

TEST_CASE("digamma and Hurwitz sums over a full period collapse") {
  for (int b = 2; b <= 12; ++b) {
    for (int j0 = 1; j0 < b; ++j0) {
      if (std::gcd(j0, b) != 1) continue;
      const std::complex<double> zeta = primitive_root(j0, b);
      std::complex<double> psi_sum{0.0};
      std::complex<double> hur_sum{0.0};
      for (int j = 1; j <= b; ++j) {
        const std::complex<double> w = primitive_root(j0 * j % b, b);
        psi_sum += w * digamma_rational(j, b).value;
        hur_sum += w * hurwitz_zeta2(static_cast<double>(j) / b).value;
      }
      const std::complex<double> psi_want =
          static_cast<double>(b) * std::log(1.0 - zeta);
      const std::complex<double> hur_want =
          static_cast<double>(b * b) * dilog_root(RootOfUnity(j0, b)).value;
      CHECK(std::abs(psi_sum - psi_want) <= 1e-9);
      CHECK(std::abs(hur_sum - hur_want) <= 1e-10 * std::abs(hur_want) + 1e-10);
    }
  }
}

TEST_CASE("dilogarithm modulus stays strictly below zeta(2) off 1") {
  double min_margin = 1e9;
  for (int b = 2; b <= 24; ++b) {
    for (int j = 1; j < b; ++j) {
      if (std::gcd(j, b) != 1) continue;
      const double margin =
          kPi * kPi / 6 - std::abs(dilog_root(RootOfUnity(j, b)).value);
      CHECK(margin > 0.1);
      min_margin = std::min(min_margin, margin);
    }
  }
  /* tightest case sits at the 24th roots nearest to 1 */
  CHECK(min_margin == doctest::Approx(0.252).epsilon(0.01));
}

TEST_CASE("gamma on (0, 170]") {
  CHECK(gamma_real(1.0).value.real() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gamma_real(0.5).value.real() ==
        doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(gamma_real(1.0 / 3).value.real() ==
        doctest::Approx(2.678938534707747633656).epsilon(1e-13));
  CHECK(gamma_real(2.0 / 3).value.real() ==
        doctest::Approx(1.354117939426400416945).epsilon(1e-13));
  const double refl =
      gamma_real(1.0 / 3).value.real() * gamma_real(2.0 / 3).value.real();
  CHECK(refl == doctest::Approx(2 * kPi / std::sqrt(3.0)).epsilon(1e-13));
  for (double x = 0.1; x <= 10.0; x += 0.37) {
    CHECK(gamma_real(x).value.real() ==
          doctest::Approx(std::tgamma(x)).epsilon(1e-12));
  }
  CHECK(std::isfinite(gamma_real(170.0).value.real()));
  CHECK_FALSE(gamma_real(0.5).rigorous);
  CHECK(gamma_real(0.5).abs_error > 0);
  CHECK_THROWS_AS(gamma_real(0.0), std::domain_error);
  CHECK_THROWS_AS(gamma_real(-1.5), std::domain_error);
  CHECK_THROWS_AS(gamma_real(171.0), std::domain_error);
}

TEST_CASE("roots of unity: reduction, powers, inverses") {
  CHECK(RootOfUnity(2, 4) == RootOfUnity(1, 2));
  CHECK(RootOfUnity(0, 5).is_one());
  CHECK(RootOfUnity(3, 3).is_one());
  CHECK(RootOfUnity(7, 5) == RootOfUnity(2, 5));
  CHECK(RootOfUnity(-1, 5) == RootOfUnity(4, 5));
  CHECK(RootOfUnity(1, 6).inverse() == RootOfUnity(5, 6));
  CHECK(RootOfUnity(1, 6).power(3) == RootOfUnity(1, 2));
  CHECK(RootOfUnity(999999, 1000000).power(999999) ==
        RootOfUnity(static_cast<int>(999999LL * 999999LL % 1000000LL),
                    1000000));
  CHECK_THROWS_AS(RootOfUnity(1, 0), std::domain_error);

  const auto r8 = RootOfUnity(1, 8).value();
  CHECK(r8.real() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(r8.imag() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

  for (int b = 1; b <= 12; ++b) {
    std::complex<double> sum{0.0};
    for (int j = 0; j < b; ++j) sum += primitive_root(j, b);
    const double want = b == 1 ? 1.0 : 0.0;
    CHECK(std::abs(sum - want) <= 1e-14);
  }
}

TEST_CASE("exact integer and rational conversion to quad") {
  const mpz_class big = (mpz_class(1) << 100) + 7;
  const qreal q = mpz_to_qreal(big);
  CHECK(qdiff(q, scalbnq(1.0Q, 100) + 7) == 0.0);
  const mpz_class neg = -big;
  CHECK(qdiff(mpz_to_qreal(neg), -q) == 0.0);
  CHECK(qdiff(mpq_to_qreal(mpq_class(1, 3)), qreal{1} / 3) <= 1e-36);
}
