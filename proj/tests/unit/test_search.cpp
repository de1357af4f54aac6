#include "doctest.h"
#include "oracles.hpp"
#include "pillai/search.hpp"

#include <map>

using namespace pillai;

namespace {

std::vector<std::string> names(const std::vector<SolutionSet>& sets) {
  std::vector<std::string> out;
  for (const auto& s : sets) out.push_back(s.instance().str());
  return out;
}

// c values with at least three solutions in the box, by counting every value
// r a^x +- s b^y directly.
std::vector<Int> triple_values(const Tuple& t, unsigned long box) {
  std::map<Int, int> count;
  for (unsigned long x = 1; x <= box; ++x) {
    const Int R = t.r * oracle::pow(t.a, x);
    for (unsigned long y = 1; y <= box; ++y) {
      const Int S = t.s * oracle::pow(t.b, y);
      ++count[R + S];
      if (R != S) ++count[abs(R - S)];
    }
  }
  std::vector<Int> out;
  for (const auto& [c, k] : count)
    if (k >= 3) out.push_back(c);
  return out;
}

}  // namespace

TEST_CASE("range validation and tuples") {
  SearchRange r;
  r.a_max = 2;
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);
  r = SearchRange{};
  r.pair_cap = 30;
  CHECK_THROWS_AS(r.validate(), std::invalid_argument);

  r = SearchRange{};
  r.a_max = 4;
  r.r_max = 3;
  r.s_max = 3;
  const auto ts = range_tuples(r);
  for (const auto& t : ts) {
    CHECK(t.b < t.a);
    CHECK(oracle::gcd(t.r * t.a, t.s * t.b) == 1);
  }
  CHECK(std::is_sorted(ts.begin(), ts.end(), [](const Tuple& l, const Tuple& m) {
    return std::tie(l.a, l.b, l.r, l.s) < std::tie(m.a, m.b, m.r, m.s);
  }));
  CHECK(ts.front().str() == "1,3,1,2");
  CHECK(range_shards(r).size() == 2);
}

TEST_CASE("wide filters exclude b | s") {
  const auto r = wide_defaults(3, 4);
  for (const auto& t : range_tuples(r)) {
    CHECK(t.s % t.b != 0);
    CHECK(t.r % t.a != 0);
  }
  CHECK(range_tuples(r).size() == 1);
}

TEST_CASE("wide_search small range") {
  const auto out = wide_search(wide_defaults(5, 1));
  CHECK(names(out) ==
        std::vector<std::string>{"3,2,1,1,1", "3,2,5,1,1", "3,2,7,1,1", "3,2,11,1,1", "3,2,13,1,1", "5,2,3,1,1"});
  for (const auto& set : out) CHECK(set.size() >= 3);
}

TEST_CASE("wide_search agrees with direct counting") {
  auto range = wide_defaults(7, 6);
  range.third_cap = 16;
  range.pair_cap = 8;
  const auto out = wide_search(range);
  std::set<std::string> got;
  for (const auto& s : out) got.insert(s.instance().str());
  std::set<std::string> expect;
  for (const auto& t : range_tuples(range)) {
    for (const Int& c : triple_values(t, range.third_cap)) {
      // Two of the solutions must lie in the smaller box.
      const auto sols = oracle::solutions(t.a, t.b, c, t.r, t.s, 1, range.pair_cap, range.pair_cap, true);
      if (sols.size() >= 2) expect.insert(PillaiInstance(t.a, t.b, c, t.r, t.s).str());
    }
  }
  CHECK(got == expect);
}

TEST_CASE("corollary_search on a <= 3, r, s <= 1") {
  SearchRange range;
  range.a_max = 3;
  range.r_max = 1;
  range.s_max = 1;
  const auto res = corollary_search(range);
  CHECK(res.residual().empty());
  CHECK(names(res.exceptional()) ==
        std::vector<std::string>{"3,2,1,1,1", "3,2,5,1,1", "3,2,7,1,1", "3,2,11,1,1", "3,2,13,1,1"});
  for (const auto& t : res.tuples)
    for (const auto& c : t.certificates) CHECK(replay_certificate(c).match);
}

TEST_CASE("corollary_search agrees with the oracle and is deterministic") {
  SearchRange range;
  range.a_max = 5;
  range.r_max = 2;
  range.s_max = 2;
  CorollaryOptions one;
  const auto a = corollary_search(range, one);
  CorollaryOptions three;
  three.threads = 3;
  const auto b = corollary_search(range, three);
  CHECK(names(a.exceptional()) == names(b.exceptional()));
  REQUIRE(a.tuples.size() == b.tuples.size());
  for (std::size_t i = 0; i < a.tuples.size(); ++i) CHECK(a.tuples[i].tuple.str() == b.tuples[i].tuple.str());
  CHECK(a.residual().empty());

  std::set<std::string> emitted;
  for (const auto& s : a.exceptional()) {
    emitted.insert(s.instance().str());
    CHECK(s.size() >= 3);
  }
  for (const auto& t : range_tuples(range))
    for (const Int& c : triple_values(t, 24))
      CHECK_MESSAGE(emitted.count(PillaiInstance(t.a, t.b, c, t.r, t.s).str()) == 1, t.str(), " c=", c);
  CHECK(names(a.exceptional()) == std::vector<std::string>{"3,2,1,1,1", "3,2,5,1,1", "3,2,7,1,1", "3,2,11,1,1",
                                                           "3,2,13,1,1", "3,2,5,1,2", "3,2,13,1,2", "4,3,13,1,1",
                                                           "5,2,3,1,1"});
}

TEST_CASE("corollary_search resumes by shard") {
  SearchRange range;
  range.a_max = 4;
  range.r_max = 2;
  range.s_max = 2;
  const auto full = corollary_search(range);

  CorollaryOptions first;
  first.max_shards = 1;
  std::vector<Shard> done;
  first.on_shard = [&](const Shard& s, const std::vector<TupleResult>&) { done.push_back(s); };
  const auto part = corollary_search(range, first);
  CHECK(part.interrupted);
  REQUIRE(done.size() == 1);

  CorollaryOptions rest;
  rest.skip_shards.insert(done.begin(), done.end());
  const auto tail = corollary_search(range, rest);
  CHECK_FALSE(tail.interrupted);
  std::vector<std::string> merged = names(part.exceptional());
  for (const auto& n : names(tail.exceptional())) merged.push_back(n);
  std::sort(merged.begin(), merged.end());
  auto expect = names(full.exceptional());
  std::sort(expect.begin(), expect.end());
  CHECK(merged == expect);
}

TEST_CASE("corollary_tuple on a tuple without exceptions") {
  const auto res = corollary_tuple({1, 7, 1, 5});
  CHECK(res.exceptional.empty());
  CHECK(res.residual.empty());
  CHECK(res.subproblems > 0);
}
