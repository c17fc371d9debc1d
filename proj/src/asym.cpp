#include "parteq/asym.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "parteq/errors.hpp"
#include "parteq/parallel.hpp"
#include "parteq/quadfloat.hpp"

namespace parteq::asym {

namespace {

using std::complex;

constexpr double kPi = std::numbers::pi;

std::string render_form(complex<double> K, double p, complex<double> C) {
  char buf[192];
  std::snprintf(buf, sizeof buf,
                "exp((%.6g%+.6gi)/z) * z^%.6g * exp(%.6g%+.6gi)", K.real(),
                K.imag(), p, C.real(), C.imag());
  return buf;
}

AsymValue assemble(complex<double> K, double p, complex<double> C,
                   complex<double> z) {
  const complex<double> logv = K / z + p * std::log(z) + C;
  return {std::exp(logv), logv, render_form(K, p, C)};
}

/* Shape accumulator for log J = K/z + p log z + C. */
struct LogShape {
  complex<double> K{0.0};
  double p = 0;
  complex<double> C{0.0};

  /* Multiplies by the inverse of the factor product (zeta_eff q^a; q^c). */
  void add_inverse_factor(int a, int c, const RootOfUnity& zeta_eff) {
    const double ac = static_cast<double>(a) / c;
    if (zeta_eff.is_one()) {
      K += kPi * kPi / (6.0 * c);
      p -= 0.5 - ac;
      C += -(0.5 - ac) * std::log(static_cast<double>(c)) -
           0.5 * std::log(2 * kPi) +
           std::log(specialfn::gamma_real(ac).value.real());
    } else {
      K += specialfn::dilog_root(zeta_eff).value / static_cast<double>(c);
      C -= (0.5 - ac) * std::log(1.0 - zeta_eff.value());
    }
  }
};

void check_family_root_order(const FamilySpec& fam, int b) {
  if (fam.name == "E" && b % 3 == 0)
    throw std::domain_error(
        "family E requires a root order not divisible by 3");
  if (fam.name == "G" && b % 2 == 0)
    throw std::domain_error("family G requires an odd root order");
}

void check_family_modulus(const FamilySpec& fam, int s) {
  if (s < 1) throw std::domain_error("modulus s must be >= 1");
  if (fam.name == "E" && s % 3 == 0)
    throw std::domain_error("family E requires s not divisible by 3");
  if (fam.name == "G" && s % 2 == 0)
    throw std::domain_error("family G requires odd s");
}

}  // namespace

std::complex<double> fac_product_numeric(int a, int c, const RootOfUnity& zeta,
                                         const SectorPoint& z, double tol) {
  if (a < 1 || c < a)
    throw std::domain_error("fac_product_numeric: requires 0 < a <= c");
  if (!(tol > 0) || tol > 0.5)
    throw std::domain_error("fac_product_numeric: tol out of (0, 0.5]");
  const qcomplex zq = z.zq();
  const qcomplex qc = exp((-static_cast<qreal>(c)) * zq);
  const qreal qc_abs = abs(qc);
  const qcomplex zv = zeta.value_q();
  qcomplex prod{1};
  qcomplex w = exp((-static_cast<qreal>(a)) * zq);
  constexpr long kBudget = 2000000;
  for (long k = 0; k < kBudget; ++k) {
    const qreal wa = abs(w);
    /* Remaining log-factors are bounded by 2 sum |w_j| for |w_j| <= 1/2,
     * a geometric series with ratio |q^c|. */
    if (wa <= 0.5Q && 2 * wa / (1 - qc_abs) <= static_cast<qreal>(tol) / 2)
      return to_complex(prod);
    prod *= qcomplex{1} - zv * w;
    if ((k + 1) % 1024 == 0) {
      const qreal expo = a + static_cast<qreal>(k + 1) * c;
      w = exp((-expo) * zq);  // fresh start against rounding drift
    } else {
      w *= qc;
    }
  }
  throw certification_error("fac_product_numeric: factor budget exhausted");
}

AsymValue fac_asym_root(int a, int c, const RootOfUnity& zeta,
                        const SectorPoint& z) {
  if (a < 1 || c < a)
    throw std::domain_error("fac_asym_root: requires 0 < a <= c");
  if (zeta.is_one())
    throw std::domain_error("fac_asym_root: zeta must differ from 1");
  const double ac = static_cast<double>(a) / c;
  const complex<double> K =
      -specialfn::dilog_root(zeta).value / static_cast<double>(c);
  const complex<double> C = (0.5 - ac) * std::log(1.0 - zeta.value());
  return assemble(K, 0.0, C, z.z);
}

AsymValue fac_asym_one(int a, int c, const SectorPoint& z) {
  if (a < 1 || c < a)
    throw std::domain_error("fac_asym_one: requires 0 < a <= c");
  const double ac = static_cast<double>(a) / c;
  const complex<double> K{-kPi * kPi / (6.0 * c)};
  const double p = 0.5 - ac;
  const complex<double> C{0.5 * std::log(2 * kPi) -
                          std::log(specialfn::gamma_real(ac).value.real()) +
                          p * std::log(static_cast<double>(c))};
  return assemble(K, p, C, z.z);
}

AsymValue major_arc_J(const FamilySpec& fam, const RootOfUnity& zeta,
                      const SectorPoint& z) {
  fam.validate();
  if (zeta.b < 2)
    throw std::domain_error("major_arc_J: root order must be >= 2");
  check_family_root_order(fam, zeta.b);
  LogShape sh;
  for (const auto& f : fam.factors) {
    const RootOfUnity zeff =
        f.e == 0 ? RootOfUnity(0, 1) : (f.e == 1 ? zeta : zeta.inverse());
    sh.add_inverse_factor(f.a, f.c, zeff);
  }
  return assemble(sh.K, sh.p, sh.C, z.z);
}

AsymValue major_arc_H(const FamilySpec& fam, int s, const SectorPoint& z) {
  check_family_modulus(fam, s);
  const double pi32 = 1.5 * std::log(2 * kPi);
  if (fam.name == "E") {
    const double g13 = specialfn::gamma_real(1.0 / 3).value.real();
    const double g23 = specialfn::gamma_real(2.0 / 3).value.real();
    const complex<double> C{std::log(g13 * g23) + 0.5 * std::log(3.0) -
                            std::log(static_cast<double>(s)) - pi32};
    return assemble({kPi * kPi / 6}, 0.5, C, z.z);
  }
  if (fam.name == "T") {
    const complex<double> C{-std::log(static_cast<double>(s)) - pi32};
    return assemble({kPi * kPi / 2}, 1.5, C, z.z);
  }
  if (fam.name == "G") {
    const complex<double> C{-std::log(2.0 * s) - 0.5 * std::log(kPi)};
    return assemble({kPi * kPi / 4}, 0.5, C, z.z);
  }
  throw std::domain_error(
      "major_arc_H: closed form known only for families E, T, G");
}

WrightParams family_wright_params(const FamilySpec& fam, int s) {
  check_family_modulus(fam, s);
  const double pi32 = std::pow(2 * kPi, 1.5);
  if (fam.name == "E") {
    const double g13 = specialfn::gamma_real(1.0 / 3).value.real();
    const double g23 = specialfn::gamma_real(2.0 / 3).value.real();
    return {kPi * kPi / 6, 0.5,
            {complex<double>{g13 * g23 * std::sqrt(3.0) / (s * pi32)}}};
  }
  if (fam.name == "T")
    return {kPi * kPi / 2, 1.5, {complex<double>{1.0 / (s * pi32)}}};
  if (fam.name == "G")
    return {kPi * kPi / 4, 0.5,
            {complex<double>{1.0 / (2.0 * s * std::sqrt(kPi))}}};
  throw std::domain_error(
      "family_wright_params: parameters known only for families E, T, G");
}

double family_rate(const FamilySpec& fam) {
  if (fam.name == "E") return kPi * kPi / 6;
  if (fam.name == "T") return kPi * kPi / 2;
  if (fam.name == "G") return kPi * kPi / 4;
  throw std::domain_error("family_rate: rate known only for families E, T, G");
}

double wright_cjr(int j, int r, double A, double B) {
  if (j < 0 || r < 0) throw std::domain_error("wright_cjr: j, r must be >= 0");
  if (!(A > 0)) throw std::domain_error("wright_cjr: A must be > 0");
  const double sA = std::sqrt(A);
  const double u = j + B + 1.5;
  double prod = 1;
  for (int i = 0; i < 2 * r; ++i) prod *= u - r + i;
  double rfact = 1;
  for (int i = 2; i <= r; ++i) rfact *= i;
  return std::pow(-1 / (4 * sA), r) * std::pow(sA, j + B + 0.5) /
         (2 * std::sqrt(kPi)) * prod / rfact;
}

double wright_expansion(const WrightParams& p, double n, int order) {
  if (!(n > 0)) throw std::domain_error("wright_expansion: n must be > 0");
  if (order < 0 || order >= static_cast<int>(p.alpha.size()))
    throw std::domain_error(
        "wright_expansion: order needs alpha coefficients up to alpha_order");
  complex<double> sum{0.0};
  for (int r = 0; r <= order; ++r) {
    complex<double> pr{0.0};
    for (int j = 0; j <= r; ++j)
      pr += p.alpha[j] * wright_cjr(j, r - j, p.A, p.B);
    sum += pr * std::pow(n, -0.5 * r);
  }
  return std::pow(n, 0.25 * (-2 * p.B - 3)) * std::exp(2 * std::sqrt(p.A * n)) *
         sum.real();
}

double thm_leading(const FamilySpec& fam, int r, int s, double n) {
  if (r < 0 || r >= s)
    throw std::domain_error("thm_leading: residue r out of [0, s)");
  return static_cast<double>(std::exp(thm_leading_log(fam, s, n)));
}

long double thm_leading_log(const FamilySpec& fam, int s, double n) {
  check_family_modulus(fam, s);
  if (!(n > 0)) throw std::domain_error("thm_leading_log: n must be > 0");
  const long double pi = std::numbers::pi_v<long double>;
  const long double nl = n;
  const long double sl = s;
  if (fam.name == "E")
    return pi * sqrtl(2 * nl / 3) - logl(4 * sqrtl(3.0L) * sl * nl);
  if (fam.name == "T")
    return pi * sqrtl(2 * nl) - logl(powl(2.0L, 3.5L) * sl) - 1.5L * logl(nl);
  if (fam.name == "G") return pi * sqrtl(nl) - logl(8 * sl * nl);
  throw std::domain_error(
      "thm_leading_log: closed form known only for families E, T, G");
}

ScanReport circle_scan(const FamilySpec& fam, int s, double x, double M,
                       int samples) {
  fam.validate();
  if (s < 1) throw std::domain_error("circle_scan: s must be >= 1");
  if (!(x > 0)) throw std::domain_error("circle_scan: x must be > 0");
  if (!(M > 0)) throw std::domain_error("circle_scan: M must be > 0");
  if (samples < 2) throw std::domain_error("circle_scan: samples must be >= 2");
  if (!(M * x < kPi))
    throw std::domain_error("circle_scan: require M*x < pi (nonempty arc)");

  ScanReport rep;
  rep.family = fam.name;
  rep.s = s;
  rep.x = x;
  rep.M = M;
  rep.A = family_rate(fam);
  rep.restriction_violated = (fam.name == "E" && s % 3 == 0) ||
                             (fam.name == "G" && s % 2 == 0);

  const int total = s * samples;
  rep.grid.resize(total);
  std::vector<double> logj(total,
                           -std::numeric_limits<double>::infinity());
  const double y0 = M * x;
  const double step = (kPi - y0) / (samples - 1);
  parallel_for(total, [&](int t) {
    const int j = t / samples;
    const double y = y0 + (t % samples) * step;
    ScanSample& smp = rep.grid[t];
    smp.j = j;
    smp.y = y;
    smp.z = {x, y};
    const SectorPoint zp(smp.z);
    const RootOfUnity zr(j, s);
    try {
      double lg = 0;
      for (const auto& f : fam.factors) {
        const RootOfUnity zeff =
            f.e == 0 ? RootOfUnity(0, 1) : (f.e == 1 ? zr : zr.inverse());
        lg -= std::log(
            std::abs(fac_product_numeric(f.a, f.c, zeff, zp, 1e-10)));
      }
      logj[t] = lg;
      smp.abs_J = std::exp(lg);
      smp.ok = true;
    } catch (const certification_error& e) {
      smp.abs_J = std::numeric_limits<double>::quiet_NaN();
      smp.ok = false;
      smp.note = e.what();
    }
  });

  double max_log = -std::numeric_limits<double>::infinity();
  bool any_ok = false;
  for (int t = 0; t < total; ++t) {
    if (!rep.grid[t].ok) continue;
    any_ok = true;
    max_log = std::max(max_log, logj[t]);
  }
  if (!any_ok) {
    rep.kappa_hat = std::numeric_limits<double>::quiet_NaN();
    rep.pass = false;
    return rep;
  }
  rep.kappa_hat = rep.A - x * max_log;
  const double envelope = std::exp((rep.A - rep.kappa_hat) / x);
  for (auto& smp : rep.grid) smp.bound = envelope;
  rep.pass = rep.kappa_hat > 0;
  return rep;
}

}  // namespace parteq::asym
