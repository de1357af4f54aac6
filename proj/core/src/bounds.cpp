#include "pillai/bounds.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace pillai {

namespace {

Real g_of(const Real& Z, const Real& C) {
  using boost::multiprecision::log;
  const Real lz = log(Z);
  return Z - 8 * lz / log(Real(2)) - C * lz * lz * log(Real("4.078") * Z);
}

}  // namespace

Real matveev_constant(unsigned degree, unsigned chi) {
  using boost::multiprecision::exp;
  using boost::multiprecision::log;
  using boost::multiprecision::pow;
  if (degree < 1) throw std::domain_error("matveev_constant: degree must be >= 1");
  if (chi != 1 && chi != 2) throw std::domain_error("matveev_constant: chi must be 1 or 2");
  const Real e = boost::math::constants::e<Real>();
  const Real D = degree;
  const Real lead = Real(5) * pow(Real(16), 5) / (6 * Real(chi));
  const Real tail = Real("20.2") + log(pow(Real(3), Real("5.5")) * D * D * log(e * D));
  return lead * pow(e, 3) * (7 + 2 * Real(chi)) * pow(3 * e / 2, chi) * tail;
}

u64 solve_global_bound(const Real& C) {
  if (C <= 0) throw std::domain_error("solve_global_bound: C must be positive");
  // g(2) < 0 since 8 log 2 / log 2 = 8 > 2; g is eventually increasing.
  u64 lo = 2, hi = 1'000'000'000'000'000'000ULL;
  if (g_of(Real(hi), C) < 0) throw std::runtime_error("solve_global_bound: no crossing below 10^18");
  while (hi - lo > 1) {
    const u64 mid = lo + (hi - lo) / 2;
    if (g_of(Real(mid), C) >= 0)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

std::string format_scientific(const Real& value, unsigned digits) {
  if (digits < 1) throw std::domain_error("format_scientific: need at least one digit");
  if (value == 0) return "0e0";
  const bool neg = value < 0;
  const Real v = neg ? Real(-value) : value;
  long e = static_cast<long>(floor(log10(v)));
  // Round to an integer mantissa of `digits` digits; a carry adds one digit.
  auto mantissa = [&](long ex) { return Real(round(v / pow(Real(10), static_cast<int>(ex - long(digits) + 1)))); };
  Real m = mantissa(e);
  if (m >= pow(Real(10), static_cast<int>(digits))) m = mantissa(++e);
  if (m < pow(Real(10), static_cast<int>(digits) - 1)) m = mantissa(--e);
  std::string d = m.str(0, std::ios_base::fixed);
  d = d.substr(0, d.find('.'));
  std::string out = neg ? "-" : "";
  out += d.substr(0, 1);
  if (d.size() > 1) out += "." + d.substr(1);
  return out + "e" + std::to_string(e);
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::pass: return "pass";
    case CheckStatus::fail: return "fail";
    case CheckStatus::not_applicable: return "not_applicable";
  }
  return "not_applicable";
}

bool TripleReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const TripleCheck& c) { return c.status == CheckStatus::pass; });
}

TripleReport check_triple_conditions(const SolutionSet& set) {
  const auto& sols = set.solutions();
  if (sols.size() != 3) throw std::invalid_argument("check_triple_conditions: requires exactly 3 solutions");
  const PillaiInstance& in = set.instance();
  TripleReport rep;
  std::vector<SignedSolution> by_x(sols.begin(), sols.end());
  std::sort(by_x.begin(), by_x.end(), [](const auto& l, const auto& r) { return l.x < r.x; });
  for (const auto& s : sols) rep.Z = std::max({rep.Z, s.x, s.y});
  rep.J = std::max(in.a, in.b);
  rep.j = std::min(in.a, in.b);
  const Int top_r = in.r * ipow(in.a, by_x[2].x);
  const Int top_s = in.s * ipow(in.b, std::max({sols[0].y, sols[1].y, sols[2].y}));
  rep.D_big = std::max(top_r, top_s);
  rep.d_small = std::min(top_r, top_s);

  Int g;
  mpz_gcd(g.get_mpz_t(), Int(in.r * in.a).get_mpz_t(), Int(in.s * in.b).get_mpz_t());
  const bool applicable =
      g == 1 && std::all_of(sols.begin(), sols.end(), [](const auto& s) { return s.x >= 1 && s.y >= 1; });
  auto status = [&](bool ok) {
    if (!applicable) return CheckStatus::not_applicable;
    return ok ? CheckStatus::pass : CheckStatus::fail;
  };
  const Int c = in.c;
  rep.checks.push_back({"second_term_exceeds_half_c", status(2 * in.r * ipow(in.a, by_x[1].x) > c)});
  rep.checks.push_back({"third_term_exceeds_c", status(top_r > c)});
  const Int zj = Int(static_cast<unsigned long>(rep.Z)) * rep.J;
  rep.checks.push_back({"c_below_ZJ_squared", status(c < zj * zj)});
  const Int need = std::max({in.r, in.s, in.a, in.b});
  rep.checks.push_back({"Z_at_least_max_rsab", status(Int(static_cast<unsigned long>(rep.Z)) >= need)});
  return rep;
}

std::vector<TripleReport> check_all_triples(const SolutionSet& set) {
  const auto& s = set.solutions();
  std::vector<TripleReport> out;
  for (std::size_t i = 0; i < s.size(); ++i)
    for (std::size_t j = i + 1; j < s.size(); ++j)
      for (std::size_t k = j + 1; k < s.size(); ++k)
        out.push_back(check_triple_conditions(SolutionSet(set.instance(), {s[i], s[j], s[k]})));
  return out;
}

}  // namespace pillai
