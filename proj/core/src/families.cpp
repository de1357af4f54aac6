#include "pillai/families.hpp"

#include "pillai/lemma_order.hpp"
#include "pillai/sieve.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <tuple>
#include <unordered_map>

namespace pillai {

namespace {

Int gcd_of(const Int& x, const Int& y) {
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g;
}

Int u128_to_int(u128 v) {
  Int hi = Int(static_cast<unsigned long>(static_cast<u64>(v >> 64)));
  Int lo = Int(static_cast<unsigned long>(static_cast<u64>(v)));
  return (hi << 64) + lo;
}

u128 repunit_u128(u64 A, unsigned long m, u128 cap, bool& over) {
  u128 v = 0;
  over = false;
  for (unsigned long i = 0; i < m; ++i) {
    if (v > (cap - 1) / A) {
      over = true;
      return 0;
    }
    v = v * A + 1;
    if (v > cap) {
      over = true;
      return 0;
    }
  }
  return v;
}

}  // namespace

bool operator==(const GoormaghtighSolution& l, const GoormaghtighSolution& r) {
  return l.A == r.A && l.B == r.B && l.m == r.m && l.n == r.n && l.value == r.value;
}

PowerIndex least_power_index(const Int& a, const Int& b, unsigned long cap) {
  if (a < 2 || b < 2) throw std::domain_error("least_power_index: need a, b > 1");
  if (gcd_of(a, b) != 1) throw std::invalid_argument("least_power_index: requires gcd(a, b) = 1");
  std::optional<PowerIndex> best;
  Int power = 1;
  for (unsigned long n = 1; n <= cap; ++n) {
    power *= b;
    for (int sign : {1, -1}) {
      Int t = power + sign;
      if (t == 0) continue;
      unsigned long m = 0;
      while (mpz_divisible_p(t.get_mpz_t(), a.get_mpz_t())) {
        t /= a;
        ++m;
      }
      if (m < 2 || gcd_of(t, a) != 1) continue;
      if (!best || m < best->m) best = PowerIndex{m, n, sign};
    }
    if (best && best->m == 2) break;
  }
  if (!best) throw InconclusiveError("least_power_index: no exponent below cap");
  return *best;
}

std::vector<TwoSolutionInstance> build_two_solution_instances(const Int& a, const Int& b, unsigned long x1,
                                                              unsigned long y1, const TwoSolutionLimits& limits) {
  if (gcd_of(a, b) != 1) throw std::invalid_argument("build_two_solution_instances: requires gcd(a, b) = 1");
  if (is_perfect_power(a) || is_perfect_power(b))
    throw std::invalid_argument("build_two_solution_instances: a and b must not be perfect powers");
  if (x1 < least_power_index(a, b, limits.index_cap).m || y1 < least_power_index(b, a, limits.index_cap).m)
    throw std::invalid_argument("build_two_solution_instances: need x1 >= m(a,b) and y1 >= m(b,a)");

  const Int ax = ipow(a, x1), by = ipow(b, y1);
  std::vector<TwoSolutionInstance> out;
  std::set<std::tuple<Int, Int, Int>> seen;
  for (unsigned long dx = 1; dx <= limits.dx_max; ++dx) {
    for (unsigned long dy = 1; dy <= limits.dy_max; ++dy) {
      for (int sa : {1, -1}) {
        for (int sb : {1, -1}) {
          const Int L = ipow(a, dx) + sa;
          const Int Rp = ipow(b, dy) + sb;
          if (L <= 0 || Rp <= 0) continue;
          const Int g = gcd_of(ax * L, by * Rp);
          const Int r = by * Rp / g;
          const Int s = ax * L / g;
          if (gcd_of(r * a, s * b) != 1 || gcd_of(r, a) != 1 || gcd_of(s, b) != 1) continue;
          PairRelation rel;
          rel.eq = PairEquation{r, a, s, b, x1, y1, sa < 0 ? 1u : 0u, sb < 0 ? 1u : 0u};
          rel.X = dx;
          rel.Y = dy;
          if (!rel.eq.holds(dx, dy)) throw InconsistencyError("build_two_solution_instances: construction identity failed");
          for (const auto& real : realise_pair(rel)) {
            PillaiInstance inst(a, b, real.c, r, s);
            if (!seen.insert({r, s, real.c}).second) continue;
            const SolutionSet oracle =
                enumerate_solutions(inst, EnumerationBounds{limits.box, limits.box, 1, SignMode::all});
            if (oracle.size() != 2) continue;
            SolutionSet pair(inst, {real.first, real.second});
            if (!(oracle == pair)) continue;
            out.push_back({pair, dx, dy, sa, sb});
          }
        }
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const TwoSolutionInstance& l, const TwoSolutionInstance& r) {
    const auto& li = l.set.instance();
    const auto& ri = r.set.instance();
    return std::tie(li.r, li.s, li.c) < std::tie(ri.r, ri.s, ri.c);
  });
  return out;
}

Int repunit(const Int& A, unsigned long m) {
  if (A < 2) throw std::domain_error("repunit: need A > 1");
  return (ipow(A, m) - 1) / (A - 1);
}

GoormaghtighResult goormaghtigh_search(const GoormaghtighCaps& caps) {
  struct Term {
    u64 base;
    unsigned long exp;
  };
  struct Hash {
    std::size_t operator()(u128 v) const {
      return std::hash<u64>()(static_cast<u64>(v) ^ (static_cast<u64>(v >> 64) * 0x9e3779b97f4a7c15ULL));
    }
  };
  std::unordered_map<u128, std::vector<Term>, Hash> by_value;
  for (u64 A = 2; A <= caps.A_max; ++A) {
    for (unsigned long m = 2; m <= caps.m_max; ++m) {
      bool over = false;
      const u128 v = repunit_u128(A, m, caps.value_cap, over);
      if (over) break;
      by_value[v].push_back({A, m});
    }
  }
  GoormaghtighResult res;
  for (u64 B = 3; B <= caps.B_max; ++B) {
    for (unsigned long n = 2; n <= caps.n_max; ++n) {
      bool over = false;
      const u128 v = repunit_u128(B, n, caps.value_cap, over);
      if (over) break;
      auto it = by_value.find(v);
      if (it == by_value.end()) continue;
      for (const Term& t : it->second) {
        if (t.base >= B) continue;
        GoormaghtighSolution sol{Int(static_cast<unsigned long>(t.base)), Int(static_cast<unsigned long>(B)), t.exp, n,
                                 u128_to_int(v)};
        if (repunit(sol.A, sol.m) != sol.value || repunit(sol.B, sol.n) != sol.value)
          throw InconsistencyError("goormaghtigh_search: repunit mismatch");
        (n == 2 ? res.n_two : res.solutions).push_back(std::move(sol));
      }
    }
  }
  auto order = [](const GoormaghtighSolution& l, const GoormaghtighSolution& r) {
    return std::tie(l.value, l.A, l.m, l.B, l.n) < std::tie(r.value, r.A, r.m, r.B, r.n);
  };
  std::sort(res.solutions.begin(), res.solutions.end(), order);
  std::sort(res.n_two.begin(), res.n_two.end(), order);
  return res;
}

FamilyRecord family_eq20(const Int& A, unsigned long m, FamilyVariant variant) {
  if (A < 2 || m < 3) throw std::invalid_argument("family_eq20: need A >= 2 and m >= 3");
  FamilyRecord rec;
  rec.variant = variant;
  rec.A = A;
  rec.m = m;
  const PerfectPower pp = perfect_power_decompose(A);
  rec.a0 = pp.base;
  rec.j = pp.exponent;
  rec.d = (ipow(A, m - 1) - 1) / (A - 1);
  const Int& d = rec.d;
  const Int b = d * A;
  PillaiInstance inst;
  std::vector<SignedSolution> sols;
  const unsigned long j = rec.j;
  if (variant == FamilyVariant::base) {
    rec.h = gcd_of(b - 1, A - 1);
    inst = PillaiInstance(rec.a0, b, A * (d - 1) / rec.h, (b - 1) / rec.h, (A - 1) / rec.h);
    sols = {{0, 0, 0, 1}, {j, 1, 0, 1}, {m * j, 2, 0, 1}};
  } else {
    rec.h = gcd_of(d * (b - 1), A - 1);
    inst = PillaiInstance(rec.a0, b, d * A * A * (d - 1) / rec.h, d * (b - 1) / rec.h, (A - 1) / rec.h);
    sols = {{j, 1, 0, 1}, {2 * j, 2, 0, 1}, {(m + 1) * j, 3, 0, 1}};
  }
  for (const auto& s : sols)
    if (!check_solution(inst, s)) throw InconsistencyError("family_eq20: stated solution fails for " + inst.str());
  rec.set = SolutionSet(inst, sols);

  // Oracle: the stated solutions are exactly those in a box past the largest one.
  const unsigned long box = sols.back().x + 2;
  const unsigned lo = variant == FamilyVariant::base ? 0 : 1;
  const SolutionSet oracle = enumerate_solutions(inst, EnumerationBounds{box, box, lo, SignMode::plus_minus});
  if (!(oracle == rec.set)) throw InconsistencyError("family_eq20: oracle disagrees for " + inst.str());

  rec.flags = classify_instance(inst);
  rec.flags.reducible = classify_reducible(
      rec.set, variant == FamilyVariant::base ? ReducibilityMode::standard : ReducibilityMode::positive_only);
  return rec;
}

GoormaghtighReduction reduce_triple(const SolutionSet& set) {
  const auto& sols = set.solutions();
  if (sols.size() != 3) throw std::invalid_argument("reduce_triple: requires exactly 3 solutions");
  for (const auto& s : sols)
    if (s.u != 0 || s.v != 1) throw std::invalid_argument("reduce_triple: solutions must have signs (u, v) = (0, 1)");
  const auto& s1 = sols[0];
  const auto& s2 = sols[1];
  const auto& s3 = sols[2];
  if (!(s1.x < s2.x && s2.x < s3.x && s1.y < s2.y && s2.y < s3.y))
    throw std::invalid_argument("reduce_triple: need strictly increasing x and y");
  const PillaiInstance& in = set.instance();
  const Int& a = in.a;
  const Int& b = in.b;

  GoormaghtighReduction red;
  const Int ra = in.r * ipow(a, s1.x);
  const Int sb = in.s * ipow(b, s1.y);
  const Int G = gcd_of(ra, sb);
  red.R = ra / G;
  red.S = sb / G;

  auto quotient = [&](const Int& num, const Int& den, const char* what) {
    if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
      throw InconsistencyError(std::string("reduce_triple: ") + what + " is not an integer for " + in.str());
    return Int(num / den);
  };
  red.t = quotient(ipow(a, s2.x - s1.x) - 1, red.S, "t");
  if (quotient(ipow(b, s2.y - s1.y) - 1, red.R, "t") != red.t)
    throw InconsistencyError("reduce_triple: the two expressions for t differ for " + in.str());
  red.T = quotient(ipow(a, s3.x - s1.x) - 1, red.S, "T");
  if (quotient(ipow(b, s3.y - s1.y) - 1, red.R, "T") != red.T)
    throw InconsistencyError("reduce_triple: the two expressions for T differ for " + in.str());

  red.g1 = std::gcd(s2.x - s1.x, s3.x - s1.x);
  red.g2 = std::gcd(s2.y - s1.y, s3.y - s1.y);
  if (red.g1 != s2.x - s1.x || red.g2 != s2.y - s1.y)
    throw InconsistencyError("reduce_triple: gcd of exponent gaps is not the first gap for " + in.str());
  if (ra * (ipow(a, red.g1) - 1) != sb * (ipow(b, red.g2) - 1))
    throw InconsistencyError("reduce_triple: r a^x1 (a^g1 - 1) != s b^y1 (b^g2 - 1) for " + in.str());

  GoormaghtighSolution& sol = red.solution;
  sol.A = ipow(a, red.g1);
  sol.B = ipow(b, red.g2);
  sol.m = (s3.x - s1.x) / red.g1;
  sol.n = (s3.y - s1.y) / red.g2;
  const Int l1 = repunit(sol.A, sol.m);
  const Int l2 = repunit(sol.B, sol.n);
  const Int ratio = quotient(red.T, red.t, "T/t");
  if (l1 != l2 || l1 != ratio)
    throw InconsistencyError("reduce_triple: repunit values disagree with T/t for " + in.str());
  sol.value = l1;
  return red;
}

}  // namespace pillai
