#include "doctest.h"
#include "oracles.hpp"
#include "pillai/families.hpp"

#include <map>

using namespace pillai;

namespace {

SolutionSet fixture(const char* inst, std::vector<SignedSolution> sols) {
  return SolutionSet(PillaiInstance::parse(inst), std::move(sols));
}

std::vector<oracle::Sol> as_oracle(const SolutionSet& set) {
  std::vector<oracle::Sol> out;
  for (const auto& s : set.solutions()) out.push_back({s.x, s.y, s.u, s.v});
  return out;
}

std::vector<oracle::Sol> oracle_box(const SolutionSet& set, unsigned lo, unsigned long box) {
  const auto& i = set.instance();
  return oracle::solutions(i.a, i.b, i.c, i.r, i.s, lo, box, box, false);
}

}  // namespace

TEST_CASE("least_power_index examples") {
  auto p = least_power_index(3, 2);
  CHECK(p.m == 2);
  CHECK(p.n == 3);
  CHECK(p.sign == 1);
  p = least_power_index(2, 3);
  CHECK(p.m == 2);
  CHECK(p.n == 1);
  p = least_power_index(5, 2);
  CHECK(p.m == 2);
  CHECK(p.n == 10);
  CHECK_THROWS_AS(least_power_index(4, 6), std::invalid_argument);
  CHECK_THROWS_AS(least_power_index(7, 2, 2), InconclusiveError);
}

TEST_CASE("least_power_index matches a direct scan") {
  for (unsigned long a = 2; a <= 12; ++a)
    for (unsigned long b = 2; b <= 12; ++b) {
      if (oracle::gcd(a, b) != 1) continue;
      unsigned long best = 0;
      for (unsigned long n = 1; n <= 120; ++n)
        for (int sign : {1, -1}) {
          const Int t = oracle::pow(b, n) + sign;
          if (t == 0) continue;
          const unsigned v = oracle::valuation(t, a);
          if (v < 2) continue;
          // t = a^m l with l prime to a, for the largest m with a^m | t.
          Int l = t;
          for (unsigned i = 0; i < v; ++i) l /= a;
          if (oracle::gcd(l, a) != 1) continue;
          if (best == 0 || v < best) best = v;
        }
      if (best == 0) continue;
      CHECK(least_power_index(a, b, 120).m == best);
    }
}

TEST_CASE("two-solution instances for (3,2,2,2)") {
  const auto out = build_two_solution_instances(3, 2, 2, 2);
  REQUIRE(!out.empty());
  bool seen = false;
  for (const auto& t : out) {
    const auto& i = t.set.instance();
    CHECK(t.set.size() == 2);
    CHECK(oracle::gcd(i.r * i.a, i.s * i.b) == 1);
    CHECK(oracle::solutions(i.a, i.b, i.c, i.r, i.s, 1, 30, 30, true) == as_oracle(t.set));
    if (i.r == 1 && i.s == 7 && i.c == 19) {
      seen = true;
      CHECK(t.set.solutions() == std::vector<SignedSolution>{{2, 2, 1, 0}, {5, 5, 0, 1}});
    }
    // (3,2,5,1,1) has a third solution and must not appear.
    CHECK_FALSE((i.r == 1 && i.s == 1 && i.c == 5));
  }
  CHECK(seen);
  CHECK_THROWS_AS(build_two_solution_instances(2, 3, 1, 2), std::invalid_argument);
  CHECK_THROWS_AS(build_two_solution_instances(4, 3, 2, 2), std::invalid_argument);
}

TEST_CASE("repunit") {
  CHECK(repunit(2, 5) == 31);
  CHECK(repunit(90, 3) == 8191);
  CHECK(repunit(10, 1) == 1);
  for (unsigned long A = 2; A < 30; ++A)
    for (unsigned long m = 1; m < 12; ++m) CHECK(repunit(A, m) == oracle::repunit(A, m));
}

TEST_CASE("goormaghtigh_search desk caps") {
  const auto res = goormaghtigh_search({});
  REQUIRE(res.solutions.size() == 2);
  CHECK(res.solutions[0] == GoormaghtighSolution{2, 5, 5, 3, 31});
  CHECK(res.solutions[1] == GoormaghtighSolution{2, 90, 13, 3, 8191});
  const GoormaghtighSolution n2{2, 6, 3, 2, 7};
  CHECK(std::find(res.n_two.begin(), res.n_two.end(), n2) != res.n_two.end());
  for (const auto& s : res.n_two) CHECK(repunit(s.A, s.m) == repunit(s.B, 2));
  for (const auto& s : res.n_two) CHECK_FALSE((s.A == 2 && s.B == 3));
}

TEST_CASE("goormaghtigh_search agrees with a brute-force join") {
  GoormaghtighCaps caps;
  caps.A_max = 60;
  caps.B_max = 60;
  caps.m_max = 12;
  caps.n_max = 12;
  caps.value_cap = static_cast<u128>(1) << 40;
  std::map<Int, std::vector<std::pair<unsigned long, unsigned long>>> seen;
  for (unsigned long A = 2; A <= 60; ++A)
    for (unsigned long m = 2; m <= 12; ++m) {
      const Int v = oracle::repunit(A, m);
      if (v > oracle::pow(2, 40)) break;
      seen[v].push_back({A, m});
    }
  std::size_t expect_big = 0, expect_two = 0;
  for (const auto& [v, list] : seen)
    for (const auto& [A, m] : list)
      for (const auto& [B, n] : list)
        if (A < B && B >= 3) (n == 2 ? expect_two : expect_big) += 1;
  const auto res = goormaghtigh_search(caps);
  CHECK(res.solutions.size() == expect_big);
  CHECK(res.n_two.size() == expect_two);
  CHECK(std::is_sorted(res.n_two.begin(), res.n_two.end(),
                       [](const auto& l, const auto& r) { return l.value < r.value; }));
}

TEST_CASE("family examples") {
  auto rec = family_eq20(2, 3);
  CHECK(rec.set.instance().str() == "2,6,4,5,1");
  CHECK(rec.set.solutions() == std::vector<SignedSolution>{{0, 0, 0, 1}, {1, 1, 0, 1}, {3, 2, 0, 1}});
  CHECK(rec.d == 3);
  CHECK(rec.h == 1);

  rec = family_eq20(3, 3);
  CHECK(rec.set.instance().str() == "3,12,9,11,2");
  CHECK(rec.set.solutions() == std::vector<SignedSolution>{{0, 0, 0, 1}, {1, 1, 0, 1}, {3, 2, 0, 1}});

  rec = family_eq20(2, 3, FamilyVariant::min_positive);
  CHECK(rec.set.solutions() == std::vector<SignedSolution>{{1, 1, 0, 1}, {2, 2, 0, 1}, {4, 3, 0, 1}});

  rec = family_eq20(9, 4);
  CHECK(rec.a0 == 3);
  CHECK(rec.j == 2);

  CHECK_THROWS_AS(family_eq20(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(family_eq20(2, 2), std::invalid_argument);
}

TEST_CASE("families for A in [2,20], m in [3,8] verify, are clean and reduce back") {
  for (unsigned long A = 2; A <= 20; ++A)
    for (unsigned long m = 3; m <= 8; ++m)
      for (auto variant : {FamilyVariant::base, FamilyVariant::min_positive}) {
        CAPTURE(A);
        CAPTURE(m);
        const auto rec = family_eq20(A, m, variant);
        const auto& i = rec.set.instance();
        for (const auto& s : rec.set.solutions()) CHECK(evaluate(i, s) == i.c);
        const unsigned lo = variant == FamilyVariant::base ? 0 : 1;
        CHECK(oracle_box(rec.set, lo, rec.set.solutions().back().x + 2) == as_oracle(rec.set));
        CHECK_FALSE(rec.flags.improper);
        CHECK_FALSE(rec.flags.redundant);
        CHECK_FALSE(rec.flags.reducible.has_value());
        const auto red = reduce_triple(rec.set);
        CHECK(red.solution.A == A);
        CHECK(red.solution.B == rec.d * A);
        CHECK(red.solution.m == m);
        CHECK(red.solution.n == 2);
      }
}

TEST_CASE("reduce_triple on the sporadic fixtures") {
  auto red = reduce_triple(fixture("2,5,3,1,1", {{2, 0, 0, 1}, {3, 1, 0, 1}, {7, 3, 0, 1}}));
  CHECK(red.R == 4);
  CHECK(red.S == 1);
  CHECK(red.g1 == 1);
  CHECK(red.g2 == 1);
  CHECK(red.t == 1);
  CHECK(red.T == 31);
  CHECK(red.solution == GoormaghtighSolution{2, 5, 5, 3, 31});

  red = reduce_triple(fixture("2,90,88,89,1", {{0, 0, 0, 1}, {1, 1, 0, 1}, {13, 3, 0, 1}}));
  CHECK(red.solution == GoormaghtighSolution{2, 90, 13, 3, 8191});

  red = reduce_triple(fixture("2,6,4,5,1", {{0, 0, 0, 1}, {1, 1, 0, 1}, {3, 2, 0, 1}}));
  CHECK(red.solution == GoormaghtighSolution{2, 6, 3, 2, 7});

  CHECK_THROWS_AS(reduce_triple(fixture("2,6,4,5,1", {{0, 0, 0, 1}, {1, 1, 0, 1}})), std::invalid_argument);
}

TEST_CASE("sporadic and positive-exponent fixtures oracle-verify") {
  // Nonnegative exponents: exactly the three stated solutions in a 30-box.
  for (const auto& set : {fixture("2,5,3,1,1", {{2, 0, 0, 1}, {3, 1, 0, 1}, {7, 3, 0, 1}}),
                          fixture("2,90,88,89,1", {{0, 0, 0, 1}, {1, 1, 0, 1}, {13, 3, 0, 1}})}) {
    CHECK(oracle_box(set, 0, 30) == as_oracle(set));
    const auto f = classify_instance(set.instance());
    CHECK_FALSE(f.improper);
    CHECK_FALSE(f.redundant);
    CHECK_FALSE(classify_reducible(set).has_value());
  }
  // Positive exponents.
  for (const auto& set : {fixture("2,5,15,5,1", {{2, 1, 0, 1}, {3, 2, 0, 1}, {7, 4, 0, 1}}),
                          fixture("2,90,7920,4005,1", {{1, 1, 0, 1}, {2, 2, 0, 1}, {14, 4, 0, 1}})}) {
    CHECK(oracle_box(set, 1, 30) == as_oracle(set));
    CHECK_FALSE(classify_reducible(set, ReducibilityMode::positive_only).has_value());
    const auto red = reduce_triple(set);
    CHECK(red.solution.B == set.instance().b);
  }
}

TEST_CASE("no instance from any construction has four solutions with signs (0,1)") {
  for (unsigned long A = 2; A <= 12; ++A)
    for (unsigned long m = 3; m <= 6; ++m)
      for (auto variant : {FamilyVariant::base, FamilyVariant::min_positive}) {
        const auto rec = family_eq20(A, m, variant);
        CHECK(oracle_box(rec.set, 0, 30).size() <= 3);
      }
  for (const auto& t : build_two_solution_instances(3, 2, 2, 2)) CHECK(oracle_box(t.set, 0, 30).size() <= 3);
}
