#pragma once

#include <gmpxx.h>

#include <map>
#include <string>
#include <vector>

namespace parteq::qseries {

using Count = mpz_class;

/* One inverse Pochhammer factor 1/(zeta^e q^a; q^c)_inf: part sizes
 * a, a+c, a+2c, ... each contributing e to the colour statistic. */
struct FactorSpec {
  int a, c, e;
};

/* A family of three-colour partitions given by its generating factors. */
struct FamilySpec {
  std::string name;
  std::vector<FactorSpec> factors;

  static const FamilySpec& E();
  static const FamilySpec& T();
  static const FamilySpec& G();
  static const FamilySpec& by_name(const std::string& name);

  void validate() const;  // throws std::domain_error
};

/* Truncated power series with coefficients in the group ring Z[Z/s]:
 * coefficient of q^n is a length-s vector indexed by statistic residue. */
class GroupRingSeries {
 public:
  GroupRingSeries(int s, long N);

  int sectors() const { return s_; }
  long order() const { return N_; }

  const Count& at(long n, int r) const;
  Count total(long n) const;
  std::vector<Count> column(int r) const;

  /* In-place multiplication by 1/(1 - zeta^e q^k), zeta the generator of
   * Z/s.  No-op for k > N. */
  void mul_inv_factor(long k, int e);

 private:
  int s_;
  long N_;
  std::vector<Count> c_;  // (N+1) x s row-major

  Count& ref(long n, int r) { return c_[static_cast<size_t>(n) * s_ + r]; }
};

struct StatisticTable {
  long n;
  std::map<long, Count> counts;  // statistic value -> count, zeros omitted

  Count total() const;
};

struct CountSequence {
  std::string label;
  std::vector<Count> values;  // index n = 0..N
};

/* Series of a single factor up to q^N. */
GroupRingSeries inv_pochhammer_series(int a, int c, int e, int s, long N);

/* Product of the family's factors up to q^N: at(n, r) counts objects of
 * size n with statistic congruent to r mod s. */
GroupRingSeries family_series(const FamilySpec& fam, int s, long N);

/* Joint distribution (statistic value -> count) at fixed size n, by
 * dynamic programming over part sizes. */
StatisticTable statistic_table(const FamilySpec& fam, long n);

/* Same distribution by explicit enumeration of all objects; n <= 30. */
StatisticTable brute_force_count(const FamilySpec& fam, long n);

/* Unrestricted partition numbers via the pentagonal recurrence. */
CountSequence pentagonal_p(long N);

/* Overlined partition numbers via the product (1+q^n)/(1-q^n). */
CountSequence overline_p(long N);

/* Residue-class counts recovered from the s complex specializations
 * (1/s) sum_j zeta_s^{-rj} J(zeta_s^j; q), computed in quad-precision
 * complex arithmetic and rounded.  tol bounds the admissible absolute
 * rounding residual (imaginary part and distance to the nearest integer);
 * violation raises certification_error. */
CountSequence multisect_complex(const FamilySpec& fam, int r, int s, long N,
                                double tol);

}  // namespace parteq::qseries
