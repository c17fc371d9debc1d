#include "parteq/emachine.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "parteq/errors.hpp"
#include "parteq/specialfn.hpp"

namespace parteq::emachine {

namespace {

/* Below this point direct evaluation of f(u) - c_{-2}/u^2 - c_{-1}/u loses
 * ~|c_{-2}|/u^2 * eps to cancellation; the Laurent series takes over. */
constexpr qreal kSeriesSwitch = 1e-3Q;

constexpr qreal kIstarCacheTol = 3e-28Q;

/* 1 - e^{-u} for complex u without cancellation near 0. */
qcomplex one_minus_exp_neg(const qcomplex& u) {
  const qreal ex = expq(-u.re);
  const qreal sh = sinq(u.im / 2);
  return {-expm1q(-u.re) + 2 * ex * sh * sh, ex * sinq(u.im)};
}

struct GaussRule {
  std::vector<qreal> x, w;
};

/* Gauss-Legendre nodes by Newton iteration on P_n, weights from P_n'. */
GaussRule legendre_rule(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    qreal t = cosq(Q_PI * (4 * i + 3) / (4 * n + 2));
    qreal dp = 1;
    for (int it = 0; it < 100; ++it) {
      qreal p0 = 1, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const qreal p2 = ((2 * k - 1) * t * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1);
      const qreal dt = p1 / dp;
      t -= dt;
      if (fabsq(dt) < 1e-36Q) break;
    }
    r.x[i] = t;
    r.w[i] = 2 / ((1 - t * t) * dp * dp);
    r.x[n - 1 - i] = -t;
    r.w[n - 1 - i] = r.w[i];
  }
  return r;
}

const GaussRule& rule7() {
  static const GaussRule r = legendre_rule(7);
  return r;
}

const GaussRule& rule15() {
  static const GaussRule r = legendre_rule(15);
  return r;
}

/* Embedded pair: value from the 15-point rule, error estimate from the
 * disagreement with the 7-point rule. */
template <class F>
std::pair<qreal, qreal> gauss_pair(const F& g, qreal lo, qreal hi) {
  const qreal half = (hi - lo) / 2;
  const qreal mid = (lo + hi) / 2;
  qreal s7 = 0, s15 = 0;
  const auto& r7 = rule7();
  for (int i = 0; i < 7; ++i) s7 += r7.w[i] * g(mid + half * r7.x[i]);
  const auto& r15 = rule15();
  for (int i = 0; i < 15; ++i) s15 += r15.w[i] * g(mid + half * r15.x[i]);
  return {half * s15, fabsq(half * (s15 - s7))};
}

/* Bisection with the tolerance split between children, so the accepted
 * panel errors sum to at most tol. */
template <class F>
qreal adaptive(const F& g, qreal lo, qreal hi, qreal tol, long& budget) {
  struct Seg {
    qreal lo, hi, tol;
    int depth;
  };
  std::vector<Seg> stack{{lo, hi, tol, 0}};
  qreal total = 0;
  while (!stack.empty()) {
    const Seg s = stack.back();
    stack.pop_back();
    budget -= 22;
    if (budget < 0)
      throw certification_error("istar: quadrature budget exhausted");
    const auto [v, e] = gauss_pair(g, s.lo, s.hi);
    if (e <= s.tol) {
      total += v;
      continue;
    }
    if (s.depth >= 48)
      throw certification_error("istar: panel failed to converge");
    const qreal m = (s.lo + s.hi) / 2;
    stack.push_back({s.lo, m, s.tol / 2, s.depth + 1});
    stack.push_back({m, s.hi, s.tol / 2, s.depth + 1});
  }
  return total;
}

struct RationalGuess {
  long num = 0, den = 1;
  bool bit_exact = false;
};

/* Continued-fraction convergent with denominator <= 1024; bit_exact means
 * num/den rounds to exactly the given double. */
RationalGuess recognize_rational(double a) {
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = a;
  for (int it = 0; it < 64; ++it) {
    const double fl = std::floor(x);
    if (fl > 1e15) break;
    const long ai = static_cast<long>(fl);
    const long p2 = ai * p1 + p0;
    const long q2 = ai * q1 + q0;
    if (q2 > 1024 || q2 <= 0) break;
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    if (std::abs(static_cast<double>(p1) / q1 - a) < 1e-13) break;
    const double rem = x - fl;
    if (rem < 1e-14) break;
    x = 1.0 / rem;
  }
  RationalGuess g;
  if (q1 >= 1 && std::abs(static_cast<double>(p1) / q1 - a) < 1e-13) {
    g.num = p1;
    g.den = q1;
    g.bit_exact =
        static_cast<double>(p1) / static_cast<double>(q1) == a;
  }
  return g;
}

qcomplex istar_cached(const LaurentSpec& spec, double A) {
  if (spec.c_exact.empty()) return istar(spec, A, kIstarCacheTol);
  using Key = std::pair<std::vector<mpq_class>, double>;
  static std::map<Key, qcomplex> cache;
  static std::mutex mu;
  const Key key{spec.c_exact, A};
  {
    std::lock_guard<std::mutex> lock(mu);
    const auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  const qcomplex v = istar(spec, A, kIstarCacheTol);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(key, v).first->second;
}

}  // namespace

SectorPoint::SectorPoint(std::complex<double> z_, double theta_)
    : z(z_), theta(theta_) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw std::domain_error("SectorPoint: z must be finite");
  if (!(z.real() > 0))
    throw std::domain_error("SectorPoint: Re z must be positive");
  const double arg = std::abs(std::arg(z));
  if (theta < 0) theta = arg;
  if (!(theta < std::numbers::pi / 2))
    throw std::domain_error("SectorPoint: sector half-angle must be < pi/2");
  if (arg > theta)
    throw std::domain_error("SectorPoint: z lies outside the sector");
}

qreal LaurentSpec::coeff(int n) const {
  if (n < n0) return 0;
  if (n > top)
    throw std::out_of_range("LaurentSpec::coeff: order above stored data");
  return c[static_cast<size_t>(n - n0)];
}

LaurentSpec laurent_coeffs_f(int a, int c, int K) {
  if (a < 1 || c < a)
    throw std::domain_error("laurent_coeffs_f: requires 0 < a <= c");
  if (K < 2 || K > 20)
    throw std::domain_error("laurent_coeffs_f: K out of [2, 20]");
  LaurentSpec spec;
  spec.n0 = -2;
  spec.top = K;

  /* x/(1-e^{-x}) = sum B_m(1) x^m / m!, so the coefficient of x^n in
   * e^{-ax}/(x(1-e^{-cx})) is (1/c) sum_{k+m=n+2} (-a)^k/k! B_m(1) c^m/m!. */
  std::vector<mpz_class> fact(K + 3);
  fact[0] = 1;
  for (int i = 1; i <= K + 2; ++i) fact[i] = fact[i - 1] * i;
  std::vector<mpq_class> bern1(K + 3);
  for (int m = 0; m <= K + 2; ++m)
    bern1[m] = specialfn::bernoulli_poly_exact(m, mpq_class(1));
  for (int n = -2; n <= K; ++n) {
    mpq_class acc = 0;
    mpz_class apow = 1;
    for (int k = 0; k <= n + 2; ++k) {
      const int m = n + 2 - k;
      mpz_class cpow;
      mpz_ui_pow_ui(cpow.get_mpz_t(), static_cast<unsigned long>(c),
                    static_cast<unsigned long>(m));
      mpq_class term = mpq_class(apow) / mpq_class(fact[k]);
      term *= bern1[m];
      term *= mpq_class(cpow) / mpq_class(fact[m]);
      acc += term;
      apow *= -a;
    }
    acc /= c;
    spec.c_exact.push_back(acc);
    spec.c.push_back(specialfn::mpq_to_qreal(acc));
  }

  const qreal aq = a, cq = c;
  spec.f = [aq, cq](const qcomplex& w) {
    return exp((-aq) * w) / (w * one_minus_exp_neg(cq * w));
  };
  spec.decay_lam = aq;
  spec.decay_m = 1 / (-expm1q(-cq));
  return spec;
}

qcomplex istar(const LaurentSpec& spec, qreal A, qreal tol) {
  if (spec.n0 < -2) throw std::domain_error("istar: n0 below -2 unsupported");
  if (spec.top < 8)
    throw std::domain_error("istar: spec.top must be >= 8");
  if (!(A > 0)) throw std::domain_error("istar: A must be > 0");
  if (!(tol > 0)) throw std::domain_error("istar: tol must be > 0");
  if (!(spec.decay_lam > 0) || !(spec.decay_m > 0))
    throw std::domain_error("istar: spec lacks a decay envelope");
  if (!spec.f) throw std::domain_error("istar: spec lacks an evaluator");

  const qreal cm2 = spec.coeff(-2);
  const qreal cm1 = spec.coeff(-1);
  const auto g = [&](qreal u) -> qreal {
    if (u < kSeriesSwitch) {
      qreal s = 0;
      for (int n = spec.top; n >= 0; --n) s = s * u + spec.coeff(n);
      return s - cm1 * expm1q(-A * u) / u;
    }
    return spec.f(qcomplex{u}).re - cm2 / (u * u) - cm1 * expq(-A * u) / u;
  };

  /* Beyond T the integrand is -c_{-2}/u^2 (integrated in closed form)
   * plus exponentially small remainders bounded by the envelope. */
  qreal T = 1;
  int doublings = 0;
  const auto remainder = [&](qreal t) {
    return spec.decay_m * expq(-spec.decay_lam * t) / spec.decay_lam +
           fabsq(cm1) * expq(-A * t) / (A * t);
  };
  while (remainder(T) > tol / 4) {
    T *= 2;
    if (++doublings > 60)
      throw certification_error("istar: tail failed to certify");
  }

  long budget = 400000;
  const qreal head = adaptive(g, qreal{0}, qreal{1}, tol / 4, budget);
  const qreal body =
      T > 1 ? adaptive(g, qreal{1}, T, tol / 4, budget) : qreal{0};
  return qcomplex{head + body - cm2 / T};
}

EMResult em_asymptotic_sum(const LaurentSpec& spec, double a_shift,
                           const SectorPoint& z, int order, double A) {
  if (!(a_shift > 0) || a_shift > 1)
    throw std::domain_error("em_asymptotic_sum: a_shift must lie in (0, 1]");
  if (order < 0)
    throw std::domain_error("em_asymptotic_sum: order must be >= 0");
  if (order > spec.top)
    throw std::domain_error("em_asymptotic_sum: order above stored data");
  if (!(A > 0)) throw std::domain_error("em_asymptotic_sum: A must be > 0");

  EMResult res;
  res.A = A;
  const qcomplex zq = z.zq();
  const qreal aq = a_shift;
  /* The double a_shift is the exact (dyadic) shift both here and in
   * direct_sum, so the Bernoulli values are taken at that exact rational. */
  const mpq_class a_exact(a_shift);

  res.singular_term =
      qcomplex{spec.coeff(-2) * specialfn::hurwitz_zeta2_q(aq)} / (zq * zq);
  res.istar_term = istar_cached(spec, A) / zq;

  qreal psi_gamma = 0;
  if (a_shift != 1.0) {
    const RationalGuess gs = recognize_rational(a_shift);
    const qreal psi =
        (gs.bit_exact && gs.num >= 1)
            ? specialfn::digamma_rational_q(static_cast<int>(gs.num),
                                            static_cast<int>(gs.den))
            : specialfn::digamma_real_q(aq);
    psi_gamma = psi + Q_EULER;
  }
  res.psi_plus_gamma = psi_gamma;
  const qcomplex log_az = log(static_cast<qreal>(A) * zq);
  res.log_term =
      ((-spec.coeff(-1)) * (log_az + qcomplex{psi_gamma})) / zq;

  res.power_terms.reserve(order + 1);
  qcomplex zpow{1};
  for (int n = 0; n <= order; ++n) {
    const qreal zeta_neg =
        -specialfn::bernoulli_poly_q(n + 1, a_exact) / (n + 1);
    res.power_terms.push_back((spec.coeff(n) * zeta_neg) * zpow);
    zpow *= zq;
  }

  res.value = res.singular_term + res.istar_term + res.log_term;
  for (const auto& t : res.power_terms) res.value += t;
  return res;
}

qcomplex direct_sum(const LaurentSpec& spec, double a_shift,
                    const SectorPoint& z, qreal tol, SumStats* stats) {
  if (!(a_shift > 0) || a_shift > 1)
    throw std::domain_error("direct_sum: a_shift must lie in (0, 1]");
  if (!(tol > 0)) throw std::domain_error("direct_sum: tol must be > 0");
  if (!(spec.decay_lam > 0) || !(spec.decay_m > 0))
    throw std::domain_error("direct_sum: spec lacks a decay envelope");
  if (!spec.f) throw std::domain_error("direct_sum: spec lacks an evaluator");

  const qcomplex zq = z.zq();
  const qreal rez = zq.re;
  const qreal lam = spec.decay_lam;
  const qreal ratio = expq(-lam * rez);
  constexpr long kBudget = 2000000;
  qcomplex sum{};
  for (long n = 0; n < kBudget; ++n) {
    const qreal t = n + static_cast<qreal>(a_shift);
    sum += spec.f(t * zq);
    const qreal next = (t + 1) * rez;
    if (next < 1) continue;
    const qreal bound = spec.decay_m * expq(-lam * next) / (1 - ratio);
    if (bound <= tol) {
      if (stats) {
        stats->terms = n + 1;
        stats->tail_bound = bound;
      }
      return sum;
    }
  }
  throw certification_error(
      "direct_sum: term budget exhausted before tail certification");
}

}  // namespace parteq::emachine
