#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <stdexcept>
#include <vector>

#include "parteq/errors.hpp"
#include "parteq/qseries.hpp"

using namespace parteq;
using namespace parteq::qseries;

namespace {

std::vector<long> totals(const GroupRingSeries& ser, long upto) {
  std::vector<long> out;
  for (long n = 0; n <= upto; ++n) out.push_back(ser.total(n).get_si());
  return out;
}

}  // namespace

TEST_CASE("family presets and validation") {
  CHECK(FamilySpec::E().factors.size() == 3);
  CHECK(FamilySpec::T().factors.size() == 3);
  CHECK(FamilySpec::G().factors.size() == 3);
  CHECK(&FamilySpec::by_name("E") == &FamilySpec::E());
  CHECK(&FamilySpec::by_name("T") == &FamilySpec::T());
  CHECK_THROWS_AS(FamilySpec::by_name("X"), std::domain_error);
  CHECK_THROWS_AS(FamilySpec::by_name("t"), std::domain_error);

  FamilySpec bad = FamilySpec::E();
  bad.factors[0].a = 5;  // a > c
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
  bad = FamilySpec::E();
  bad.factors[1].e = 2;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("group ring series basics") {
  GroupRingSeries one(3, 4);
  CHECK(one.at(0, 0) == 1);
  CHECK(one.at(0, 1) == 0);
  CHECK(one.total(4) == 0);
  CHECK_THROWS_AS(one.at(5, 0), std::out_of_range);
  CHECK_THROWS_AS(one.at(0, 3), std::out_of_range);
  CHECK_THROWS_AS(GroupRingSeries(0, 4), std::domain_error);
  CHECK_THROWS_AS(GroupRingSeries(2, -1), std::domain_error);

  /* 1/(1-q) with weight +1: the n-part partition of n lands in residue n */
  GroupRingSeries geo(2, 5);
  geo.mul_inv_factor(1, +1);
  for (long n = 0; n <= 5; ++n) {
    CHECK(geo.at(n, static_cast<int>(n % 2)) == 1);
    CHECK(geo.at(n, static_cast<int>((n + 1) % 2)) == 0);
  }
}

TEST_CASE("single inverse Pochhammer factor, frozen spot value") {
  /* parts congruent to 1 mod 2, each weighted +1, tracked mod 2:
   * n=3 splits as 3 or 1+1+1, statistics 1 and 3, both odd. */
  const auto ser = inv_pochhammer_series(1, 2, +1, 2, 3);
  CHECK(ser.at(3, 0) == 0);
  CHECK(ser.at(3, 1) == 2);
  CHECK(ser.total(3) == 2);
}

TEST_CASE("unsigned totals reproduce the classical counting sequences") {
  const long N = 120;
  const auto pent = pentagonal_p(N);
  const auto over = overline_p(N);
  const std::vector<long> p_head = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  const std::vector<long> ov_head = {1, 2, 4, 8, 14, 24, 40};
  for (size_t i = 0; i < p_head.size(); ++i)
    CHECK(pent.values[i] == p_head[i]);
  for (size_t i = 0; i < ov_head.size(); ++i)
    CHECK(over.values[i] == ov_head[i]);

  const auto e1 = family_series(FamilySpec::E(), 1, N);
  const auto g1 = family_series(FamilySpec::G(), 1, N);
  for (long n = 0; n <= N; ++n) {
    CHECK(e1.at(n, 0) == pent.values[n]);
    CHECK(g1.at(n, 0) == over.values[n]);
  }

  const auto t1 = family_series(FamilySpec::T(), 1, 6);
  const std::vector<long> t_head = {1, 3, 9, 22, 51, 108, 221};
  for (long n = 0; n <= 6; ++n) CHECK(t1.at(n, 0) == t_head[n]);
}

TEST_CASE("residue columns, frozen spot values") {
  const auto g3 = family_series(FamilySpec::G(), 3, 2);
  CHECK(g3.at(2, 0) == 2);
  CHECK(g3.at(2, 1) == 1);
  CHECK(g3.at(2, 2) == 1);
  CHECK(g3.total(2) == 4);
}

TEST_CASE("statistic table equals direct enumeration") {
  for (const auto* fam :
       {&FamilySpec::E(), &FamilySpec::T(), &FamilySpec::G()}) {
    for (long n = 0; n <= 14; ++n) {
      const auto fast = statistic_table(*fam, n);
      const auto slow = brute_force_count(*fam, n);
      CHECK(fast.n == n);
      CHECK(fast.counts == slow.counts);
      CHECK(fast.total() == slow.total());
    }
  }
}

TEST_CASE("statistic table, frozen spot value") {
  const auto t2 = brute_force_count(FamilySpec::T(), 2);
  const std::map<long, Count> want = {
      {-2, 1}, {-1, 2}, {0, 3}, {1, 2}, {2, 1}};
  CHECK(t2.counts == want);
  CHECK(t2.total() == 9);
}

TEST_CASE("swapping the two signed colours negates the statistic") {
  /* T and G use the same (a, c) for the +1 and -1 factors, so the
   * distribution of the statistic is symmetric about zero. */
  for (const auto* fam : {&FamilySpec::T(), &FamilySpec::G()}) {
    for (long n : {5L, 17L, 40L}) {
      const auto tab = statistic_table(*fam, n);
      for (const auto& [m, cnt] : tab.counts) {
        auto it = tab.counts.find(-m);
        REQUIRE(it != tab.counts.end());
        CHECK(it->second == cnt);
      }
    }
  }
}

TEST_CASE("residue columns aggregate the statistic table") {
  for (const auto* fam :
       {&FamilySpec::E(), &FamilySpec::T(), &FamilySpec::G()}) {
    for (int s : {1, 2, 3, 5, 7}) {
      const auto ser = family_series(*fam, s, 20);
      for (long n = 0; n <= 20; ++n) {
        const auto tab = statistic_table(*fam, n);
        std::vector<Count> by_res(static_cast<size_t>(s), Count(0));
        for (const auto& [m, cnt] : tab.counts)
          by_res[static_cast<size_t>(((m % s) + s) % s)] += cnt;
        for (int r = 0; r < s; ++r) CHECK(ser.at(n, r) == by_res[r]);
      }
    }
  }
}

TEST_CASE("root-of-unity multisection matches the integer recurrence") {
  const long N = 60;
  for (const auto* fam :
       {&FamilySpec::E(), &FamilySpec::T(), &FamilySpec::G()}) {
    for (int s : {1, 2, 3, 5, 8, 12}) {
      const auto ser = family_series(*fam, s, N);
      for (int r = 0; r < s; ++r) {
        const auto ms = multisect_complex(*fam, r, s, N, 1e-9);
        REQUIRE(ms.values.size() == static_cast<size_t>(N + 1));
        for (long n = 0; n <= N; ++n) CHECK(ms.values[n] == ser.at(n, r));
      }
    }
  }
}

TEST_CASE("multisection, frozen spot value") {
  const auto ms = multisect_complex(FamilySpec::G(), 0, 3, 2, 1e-9);
  REQUIRE(ms.values.size() == 3);
  CHECK(ms.values[0] == 1);
  CHECK(ms.values[1] == 0);
  CHECK(ms.values[2] == 2);
}

TEST_CASE("multisection certifies its rounding") {
  /* an impossible tolerance must be rejected, not silently rounded */
  CHECK_THROWS_AS(multisect_complex(FamilySpec::T(), 0, 7, 200, 1e-40),
                  certification_error);
}

TEST_CASE("argument validation") {
  CHECK_THROWS_AS(family_series(FamilySpec::E(), 0, 10), std::domain_error);
  CHECK_THROWS_AS(family_series(FamilySpec::E(), 2, -1), std::domain_error);
  CHECK_THROWS_AS(inv_pochhammer_series(0, 2, 1, 2, 3), std::domain_error);
  CHECK_THROWS_AS(inv_pochhammer_series(3, 2, 1, 2, 3), std::domain_error);
  CHECK_THROWS_AS(statistic_table(FamilySpec::E(), -1), std::domain_error);
  CHECK_THROWS_AS(brute_force_count(FamilySpec::E(), 31), std::domain_error);
  CHECK_THROWS_AS(multisect_complex(FamilySpec::E(), 3, 3, 10, 1e-9),
                  std::domain_error);
  CHECK_THROWS_AS(pentagonal_p(-1), std::domain_error);
  CHECK_THROWS_AS(overline_p(-1), std::domain_error);
}
