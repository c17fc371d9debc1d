#include "parteq/qseries.hpp"

#include <algorithm>
#include <stdexcept>

#include "parteq/errors.hpp"
#include "parteq/quadfloat.hpp"
#include "parteq/specialfn.hpp"

namespace parteq::qseries {

namespace {

FamilySpec make_family(const char* name, std::vector<FactorSpec> fs) {
  FamilySpec f{name, std::move(fs)};
  f.validate();
  return f;
}

void check_sn(int s, long N) {
  if (s < 1) throw std::domain_error("modulus s must be >= 1");
  if (N < 0) throw std::domain_error("series order N must be >= 0");
}

}  // namespace

const FamilySpec& FamilySpec::E() {
  static const FamilySpec f = make_family("E", {{1, 3, 1}, {2, 3, -1}, {3, 3, 0}});
  return f;
}

const FamilySpec& FamilySpec::T() {
  static const FamilySpec f = make_family("T", {{1, 1, 1}, {1, 1, -1}, {1, 1, 0}});
  return f;
}

const FamilySpec& FamilySpec::G() {
  static const FamilySpec f = make_family("G", {{1, 2, 1}, {1, 2, -1}, {2, 2, 0}});
  return f;
}

const FamilySpec& FamilySpec::by_name(const std::string& name) {
  if (name == "E") return E();
  if (name == "T") return T();
  if (name == "G") return G();
  throw std::domain_error("unknown family '" + name + "' (expected E, T or G)");
}

void FamilySpec::validate() const {
  if (factors.empty()) throw std::domain_error("family has no factors");
  for (const auto& f : factors) {
    if (f.a < 1 || f.c < f.a)
      throw std::domain_error("factor requires 0 < a <= c");
    if (f.e < -1 || f.e > 1)
      throw std::domain_error("factor weight e must be -1, 0 or 1");
  }
}

GroupRingSeries::GroupRingSeries(int s, long N) : s_(s), N_(N) {
  check_sn(s, N);
  c_.assign(static_cast<size_t>(N + 1) * s, Count(0));
  c_[0] = 1;  // identity component of the constant term
}

const Count& GroupRingSeries::at(long n, int r) const {
  if (n < 0 || n > N_) throw std::out_of_range("GroupRingSeries: n out of range");
  if (r < 0 || r >= s_) throw std::out_of_range("GroupRingSeries: residue out of range");
  return c_[static_cast<size_t>(n) * s_ + r];
}

Count GroupRingSeries::total(long n) const {
  Count t = 0;
  for (int r = 0; r < s_; ++r) t += at(n, r);
  return t;
}

std::vector<Count> GroupRingSeries::column(int r) const {
  std::vector<Count> col;
  col.reserve(N_ + 1);
  for (long n = 0; n <= N_; ++n) col.push_back(at(n, r));
  return col;
}

void GroupRingSeries::mul_inv_factor(long k, int e) {
  if (k < 1) throw std::domain_error("part size k must be >= 1");
  if (k > N_) return;
  /* Ascending n makes c[n-k] the already-updated row, which realizes the
   * full geometric series of the factor in one pass. */
  const int shift = ((e % s_) + s_) % s_;
  for (long n = k; n <= N_; ++n) {
    Count* dst = &ref(n, 0);
    const Count* src = &ref(n - k, 0);
    if (shift == 0) {
      for (int r = 0; r < s_; ++r) dst[r] += src[r];
    } else {
      for (int r = 0; r < s_; ++r) {
        int p = r - shift;
        if (p < 0) p += s_;
        dst[r] += src[p];
      }
    }
  }
}

GroupRingSeries inv_pochhammer_series(int a, int c, int e, int s, long N) {
  FactorSpec f{a, c, e};
  FamilySpec probe{"factor", {f}};
  probe.validate();
  check_sn(s, N);
  GroupRingSeries g(s, N);
  for (long k = a; k <= N; k += c) g.mul_inv_factor(k, e);
  return g;
}

GroupRingSeries family_series(const FamilySpec& fam, int s, long N) {
  fam.validate();
  check_sn(s, N);
  GroupRingSeries g(s, N);
  for (const auto& f : fam.factors)
    for (long k = f.a; k <= N; k += f.c) g.mul_inv_factor(k, f.e);
  return g;
}

Count StatisticTable::total() const {
  Count t = 0;
  for (const auto& [m, cnt] : counts) t += cnt;
  return t;
}

StatisticTable statistic_table(const FamilySpec& fam, long n) {
  fam.validate();
  if (n < 0) throw std::domain_error("statistic_table: n must be >= 0");
  /* dp[sz][m + n] = number of objects of size sz and statistic m; each
   * unit of |m| consumes at least one part, so |m| <= n. */
  const long width = 2 * n + 1;
  std::vector<std::vector<Count>> dp(n + 1, std::vector<Count>(width, Count(0)));
  dp[0][n] = 1;
  for (const auto& f : fam.factors) {
    for (long k = f.a; k <= n; k += f.c) {
      for (long sz = k; sz <= n; ++sz) {
        auto& dst = dp[sz];
        const auto& src = dp[sz - k];
        const long lo = std::max<long>(0, f.e);
        const long hi = std::min<long>(width, width + f.e);
        for (long i = lo; i < hi; ++i) dst[i] += src[i - f.e];
      }
    }
  }
  StatisticTable out{n, {}};
  for (long i = 0; i < width; ++i)
    if (dp[n][i] != 0) out.counts.emplace(i - n, dp[n][i]);
  return out;
}

StatisticTable brute_force_count(const FamilySpec& fam, long n) {
  fam.validate();
  if (n < 0) throw std::domain_error("brute_force_count: n must be >= 0");
  if (n > 30)
    throw std::domain_error("brute_force_count: n > 30 (enumeration guard)");
  struct Part {
    long size;
    int e;
  };
  std::vector<Part> parts;
  for (const auto& f : fam.factors)
    for (long k = f.a; k <= n; k += f.c) parts.push_back({k, f.e});
  /* Large sizes first: few multiplicity choices near the root. */
  std::stable_sort(parts.begin(), parts.end(),
                   [](const Part& a, const Part& b) { return a.size > b.size; });
  std::vector<long long> tally(2 * n + 1, 0);
  const auto rec = [&](auto&& self, size_t i, long rem, long m) -> void {
    if (rem == 0) {
      ++tally[m + n];
      return;
    }
    if (i == parts.size()) return;
    const auto [size, e] = parts[i];
    for (long cnt = 0; cnt * size <= rem; ++cnt)
      self(self, i + 1, rem - cnt * size, m + cnt * e);
  };
  rec(rec, 0, n, 0);
  StatisticTable out{n, {}};
  for (long i = 0; i <= 2 * n; ++i)
    if (tally[i] != 0)
      out.counts.emplace(i - n, Count(static_cast<long>(tally[i])));
  return out;
}

CountSequence pentagonal_p(long N) {
  if (N < 0) throw std::domain_error("pentagonal_p: N must be >= 0");
  CountSequence seq{"p", std::vector<Count>(N + 1)};
  auto& p = seq.values;
  p[0] = 1;
  for (long n = 1; n <= N; ++n) {
    Count acc = 0;
    for (long k = 1;; ++k) {
      const long g1 = k * (3 * k - 1) / 2;
      const long g2 = k * (3 * k + 1) / 2;
      if (g1 > n && g2 > n) break;
      if (k % 2 == 1) {
        if (g1 <= n) acc += p[n - g1];
        if (g2 <= n) acc += p[n - g2];
      } else {
        if (g1 <= n) acc -= p[n - g1];
        if (g2 <= n) acc -= p[n - g2];
      }
    }
    p[n] = acc;
  }
  return seq;
}

CountSequence overline_p(long N) {
  if (N < 0) throw std::domain_error("overline_p: N must be >= 0");
  CountSequence seq{"overline_p", std::vector<Count>(N + 1)};
  auto& c = seq.values;
  c[0] = 1;
  for (long n = 1; n <= N; ++n) {
    for (long i = N; i >= n; --i) c[i] += c[i - n];  // * (1 + q^n)
    for (long i = n; i <= N; ++i) c[i] += c[i - n];  // * 1/(1 - q^n)
  }
  return seq;
}

CountSequence multisect_complex(const FamilySpec& fam, int r, int s, long N,
                                double tol) {
  fam.validate();
  check_sn(s, N);
  if (r < 0 || r >= s)
    throw std::domain_error("multisect_complex: residue r out of [0, s)");
  if (!(tol > 0)) throw std::domain_error("multisect_complex: tol must be > 0");

  std::vector<qcomplex> roots(s);  // zeta_s^i
  for (int i = 0; i < s; ++i)
    roots[i] = specialfn::RootOfUnity(i, s).value_q();

  std::vector<qcomplex> acc(static_cast<size_t>(N + 1));
  std::vector<qcomplex> coeff(static_cast<size_t>(N + 1));
  for (int jj = 0; jj < s; ++jj) {
    std::fill(coeff.begin(), coeff.end(), qcomplex{});
    coeff[0] = qcomplex{1};
    for (const auto& f : fam.factors) {
      const qcomplex w = roots[((jj * f.e) % s + s) % s];
      for (long k = f.a; k <= N; k += f.c)
        for (long n = k; n <= N; ++n) coeff[n] += w * coeff[n - k];
    }
    const qcomplex back = roots[(s - (static_cast<long>(r) * jj) % s) % s];
    for (long n = 0; n <= N; ++n) acc[n] += back * coeff[n];
  }

  CountSequence seq{fam.name + " r" + std::to_string(r) + " mod " +
                        std::to_string(s),
                    std::vector<Count>(N + 1)};
  qreal worst = 0;
  for (long n = 0; n <= N; ++n) {
    const qcomplex v = acc[n] / static_cast<qreal>(s);
    const qreal rounded = nearbyintq(v.re);
    worst = std::max(worst, fabsq(v.re - rounded));
    worst = std::max(worst, fabsq(v.im));
    seq.values[n] = Count(qinteger_string(rounded));
  }
  if (worst > static_cast<qreal>(tol))
    throw certification_error(
        "multisect_complex: rounding residual " +
        qformat(worst, 6) + " exceeds tol " + std::to_string(tol));
  return seq;
}

}  // namespace parteq::qseries
