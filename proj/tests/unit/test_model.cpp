#include "doctest.h"
#include "oracles.hpp"
#include "pillai/enumerate.hpp"

#include <algorithm>

using namespace pillai;

namespace {

PillaiInstance inst(const char* t) { return PillaiInstance::parse(t); }
SignedSolution sol(const char* t) { return SignedSolution::parse(t); }

}  // namespace

TEST_CASE("instance text form") {
  const auto i = inst("3,2,7,1,1");
  CHECK(i.a == 3);
  CHECK(i.b == 2);
  CHECK(i.c == 7);
  CHECK(i.str() == "3,2,7,1,1");
  CHECK(PillaiInstance::parse(" 3, 2,7,1,1").str() == "3,2,7,1,1");
  CHECK_THROWS_AS(inst("3,2,7,1"), std::invalid_argument);
  CHECK_THROWS_AS(inst("3,2,0,1,1"), std::invalid_argument);
  CHECK_THROWS_AS(inst("1,2,7,1,1"), std::invalid_argument);
  CHECK_THROWS_AS(inst("3,x,7,1,1"), std::invalid_argument);
  CHECK(sol("2,4,1,0").str() == "2,4,1,0");
  CHECK_THROWS_AS(sol("2,4,2,0"), std::invalid_argument);
}

TEST_CASE("check_solution examples") {
  CHECK(check_solution(inst("3,2,1,1,1"), sol("2,3,0,1")));
  CHECK(check_solution(inst("5,2,3,1,1"), sol("3,7,1,0")));
  CHECK_FALSE(check_solution(inst("3,2,1,1,1"), sol("1,1,0,0")));
  CHECK(evaluate(inst("3,2,1,1,1"), sol("1,1,0,0")) == 5);
}

TEST_CASE("SolutionSet rejects non-solutions and sorts") {
  CHECK_THROWS_AS(SolutionSet(inst("3,2,1,1,1"), {sol("1,1,0,0")}), std::invalid_argument);
  SolutionSet s(inst("3,2,1,1,1"), {sol("2,3,0,1"), sol("1,1,0,1"), sol("1,2,1,0"), sol("1,1,0,1")});
  REQUIRE(s.size() == 3);
  CHECK(s.solutions().front() == sol("1,1,0,1"));
  CHECK(s.least() == sol("1,1,0,1"));
  CHECK_THROWS(SolutionSet(inst("3,2,1,1,1"), {}).least());
}

TEST_CASE("classify_instance examples") {
  auto f = classify_instance(inst("3,2,7,1,1"));
  CHECK_FALSE(f.improper);
  CHECK_FALSE(f.redundant);
  CHECK(classify_instance(inst("4,3,13,1,1")).redundant);
  CHECK(classify_instance(inst("3,2,7,3,1")).improper);
  CHECK(classify_instance(inst("3,2,7,1,4")).improper);
  CHECK_FALSE(classify_instance(inst("3,2,7,1,1")).reducible.has_value());
}

TEST_CASE("classify_reducible examples") {
  // (2,5,6,2,2): 2*2^2 - 2*5^0 = 6.
  SolutionSet s1(inst("2,5,6,2,2"), {sol("2,0,0,1")});
  auto w = classify_reducible(s1);
  REQUIRE(w.has_value());
  CHECK(w->k == 2);
  CHECK(w->r1 == 1);
  CHECK(w->w == 2);
  CHECK(w->s1 == 1);
  CHECK(w->z == 0);

  SolutionSet s2(inst("2,5,3,1,1"), {sol("2,0,0,1")});
  CHECK_FALSE(classify_reducible(s2).has_value());

  SolutionSet s3(inst("2,90,88,89,1"), {sol("0,0,0,1"), sol("1,1,0,1"), sol("13,3,0,1")});
  CHECK_FALSE(classify_reducible(s3).has_value());

  CHECK_THROWS(classify_reducible(SolutionSet(inst("2,5,3,1,1"), {})));
}

TEST_CASE("classify_reducible witness satisfies its definition") {
  for (unsigned long a = 2; a <= 7; ++a)
    for (unsigned long b = 2; b <= 7; ++b)
      for (unsigned long r = 1; r <= 12; ++r)
        for (unsigned long s = 1; s <= 12; ++s)
          for (unsigned long x = 0; x <= 3; ++x) {
            const Int R = r * oracle::pow(a, x);
            const Int S = s * oracle::pow(b, x % 2);
            if (R <= S) continue;
            PillaiInstance i(a, b, R - S, r, s);
            SolutionSet set(i, {SignedSolution{x, x % 2, 0, 1}});
            const auto w = classify_reducible(set);
            // Independent search for the smallest k.
            std::optional<unsigned long> expect;
            for (unsigned long k = 2; k <= R && !expect; ++k) {
              if (R % k != 0 || S % k != 0) continue;
              expect = k;
            }
            // Any common divisor k > 1 admits r1 = R/k, w = 0 and s1 = S/k, z = 0.
            CHECK(w.has_value() == expect.has_value());
            if (w) {
              CHECK(w->k == *expect);
              CHECK(w->r1 * oracle::pow(a, w->w) * w->k == R);
              CHECK(w->s1 * oracle::pow(b, w->z) * w->k == S);
            }
          }
}

TEST_CASE("classify_reducible is none for coprime r, s with r prime and least solution (0,0)") {
  for (unsigned long r : {2ul, 3ul, 5ul, 7ul, 11ul, 13ul}) {
    for (unsigned long s = 1; s < r; ++s) {
      if (oracle::gcd(r, s) != 1) continue;
      for (unsigned long a = 2; a < 6; ++a) {
        PillaiInstance i(a, 7, r - s, r, s);
        SolutionSet set(i, {SignedSolution{0, 0, 0, 1}});
        CHECK_FALSE(classify_reducible(set).has_value());
      }
    }
  }
}

TEST_CASE("classify_reducible positive-only mode") {
  // (2,5,6,2,2) at (2,0): the only k leaves z = 0.
  SolutionSet s1(inst("2,5,6,2,2"), {sol("2,0,0,1")});
  CHECK_FALSE(classify_reducible(s1, ReducibilityMode::positive_only).has_value());
  // 4*3^2 - 2*5 = 26: k = 2 gives 2*3^2 and 1*5, both with positive exponents.
  SolutionSet s2(inst("3,5,26,4,2"), {sol("2,1,0,1")});
  auto w = classify_reducible(s2, ReducibilityMode::positive_only);
  REQUIRE(w.has_value());
  CHECK(w->k == 2);
  CHECK(w->w > 0);
  CHECK(w->z > 0);
}

TEST_CASE("classify_equal_x examples") {
  auto e = classify_equal_x(inst("3,2,7,1,1"), sol("2,1,0,1"), sol("2,4,1,0"));
  CHECK(e.h == 3);
  CHECK(e.sign == 1);
  e = classify_equal_x(inst("5,2,3,1,1"), sol("1,1,0,1"), sol("1,3,1,0"));
  CHECK(e.h == 2);
  CHECK(e.sign == 1);
  e = classify_equal_x(inst("3,2,1,1,1"), sol("1,1,0,1"), sol("1,2,1,0"));
  CHECK(e.h == 1);
  CHECK(e.sign == 1);
  // 2 - 1 = 1 = 3 - 2 shares x = 1 with b = 3.
  CHECK_THROWS_AS(classify_equal_x(inst("2,3,1,1,1"), sol("1,0,0,1"), sol("1,1,1,0")), InconsistencyError);
  CHECK_THROWS(classify_equal_x(inst("3,2,7,1,1"), sol("2,1,0,1"), sol("1,1,0,1")));
}

TEST_CASE("instances with three solutions and a shared x are the four exceptions") {
  const auto& known = equal_x_exceptions();
  CHECK(known.size() == 4);
  std::vector<std::string> seen;
  for (unsigned long a = 2; a <= 9; ++a)
    for (unsigned long b = 2; b <= 9; ++b) {
      if (oracle::gcd(a, b) != 1) continue;
      for (unsigned long r = 1; r <= 4; ++r)
        for (unsigned long s = 1; s <= 4; ++s) {
          if (oracle::gcd(r * a, s * b) != 1) continue;
          for (unsigned long x = 1; x <= 6; ++x)
            for (unsigned long y = 1; y <= 8; ++y) {
              const Int R = r * oracle::pow(a, x), S = s * oracle::pow(b, y);
              for (const Int& c : {Int(R + S), Int(abs(R - S))}) {
                if (c <= 0 || c > 200) continue;
                PillaiInstance i(a, b, c, r, s);
                const auto set = enumerate_solutions(i, {14, 14, 1, SignMode::all});
                if (set.size() < 3) continue;
                const auto& v = set.solutions();
                bool shared = false;
                for (std::size_t p = 0; p < v.size(); ++p)
                  for (std::size_t q = p + 1; q < v.size(); ++q) shared |= v[p].x == v[q].x;
                if (shared) seen.push_back(i.str());
              }
            }
        }
    }
  std::sort(seen.begin(), seen.end());
  seen.erase(std::unique(seen.begin(), seen.end()), seen.end());
  std::vector<std::string> expect;
  for (const auto& i : known) expect.push_back(i.str());
  std::sort(expect.begin(), expect.end());
  CHECK(seen == expect);
}
