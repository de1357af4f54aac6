#include "pillai/enumerate.hpp"

#include <algorithm>
#include <sstream>

namespace pillai {

namespace {

void collect(const PillaiInstance& inst, SignMode mode, unsigned long x, unsigned long y, const Int& R, const Int& S,
             std::vector<SignedSolution>& out) {
  if (mode == SignMode::all && R + S == inst.c) out.push_back({x, y, 0, 0});
  if (R - S == inst.c) out.push_back({x, y, 0, 1});
  if (mode == SignMode::all && S - R == inst.c) out.push_back({x, y, 1, 0});
}

}  // namespace

SolutionSet enumerate_solutions(const PillaiInstance& inst, const EnumerationBounds& bounds) {
  inst.validate();
  std::vector<SignedSolution> found;
  const unsigned long lo = bounds.min_exponent;
  Int R = inst.r * ipow(inst.a, lo);
  const Int S0 = inst.s * ipow(inst.b, lo);
  for (unsigned long x = lo; x <= bounds.x_max; ++x, R *= inst.a) {
    Int S = S0;
    for (unsigned long y = lo; y <= bounds.y_max; ++y, S *= inst.b) {
      // Past this point no sign choice can reach c: R+S > c, R-S < c, S-R > c.
      if (S > R + inst.c) break;
      collect(inst, bounds.sign_mode, x, y, R, S, found);
    }
  }
  return SolutionSet(inst, std::move(found));
}

SolutionSet enumerate_solutions_y_outer(const PillaiInstance& inst, const EnumerationBounds& bounds) {
  inst.validate();
  std::vector<SignedSolution> found;
  const unsigned long lo = bounds.min_exponent;
  Int S = inst.s * ipow(inst.b, lo);
  const Int R0 = inst.r * ipow(inst.a, lo);
  for (unsigned long y = lo; y <= bounds.y_max; ++y, S *= inst.b) {
    Int R = R0;
    for (unsigned long x = lo; x <= bounds.x_max; ++x, R *= inst.a) {
      if (R > S + inst.c) break;
      collect(inst, bounds.sign_mode, x, y, R, S, found);
    }
  }
  return SolutionSet(inst, std::move(found));
}

Int PairEquation::lhs(unsigned long X) const {
  Int t = ipow(a, X);
  t += m ? -1 : 1;
  return r * ipow(a, x0) * t;
}

Int PairEquation::rhs(unsigned long Y) const {
  Int t = ipow(b, Y);
  t += n ? -1 : 1;
  return s * ipow(b, y0) * t;
}

std::string PairEquation::str() const {
  std::ostringstream os;
  os << r << ',' << a << ',' << s << ',' << b << ',' << x0 << ',' << y0 << ',' << m << ',' << n;
  return os.str();
}

PairEquation PairEquation::parse(std::string_view text) {
  std::vector<std::string> parts(1);
  for (char ch : text) {
    if (ch == ',')
      parts.emplace_back();
    else if (ch != ' ')
      parts.back().push_back(ch);
  }
  if (parts.size() != 8) throw std::invalid_argument("pair equation must be 'r,a,s,b,x0,y0,m,n'");
  PairEquation eq;
  Int* big[] = {&eq.r, &eq.a, &eq.s, &eq.b};
  for (int i = 0; i < 4; ++i) {
    if (parts[i].empty() || big[i]->set_str(parts[i], 10) != 0)
      throw std::invalid_argument("malformed integer '" + parts[i] + "'");
  }
  auto small = [&](int i) -> unsigned long {
    Int v;
    if (parts[i].empty() || v.set_str(parts[i], 10) != 0 || v < 0 || !v.fits_ulong_p())
      throw std::invalid_argument("malformed exponent '" + parts[i] + "'");
    return v.get_ui();
  };
  eq.x0 = small(4);
  eq.y0 = small(5);
  eq.m = static_cast<unsigned>(small(6));
  eq.n = static_cast<unsigned>(small(7));
  if (eq.m > 1 || eq.n > 1) throw std::invalid_argument("sign bits m, n must be 0 or 1");
  if (eq.r < 1 || eq.s < 1 || eq.a < 2 || eq.b < 2) throw std::invalid_argument("pair equation needs r,s>0 and a,b>1");
  return eq;
}

bool operator==(const PairEquation& l, const PairEquation& r) {
  return l.r == r.r && l.a == r.a && l.s == r.s && l.b == r.b && l.x0 == r.x0 && l.y0 == r.y0 && l.m == r.m &&
         l.n == r.n;
}

PairRelation pair_equation(const PillaiInstance& inst, const SignedSolution& s1, const SignedSolution& s2) {
  if (!check_solution(inst, s1) || !check_solution(inst, s2))
    throw std::invalid_argument("pair_equation: solutions do not verify against " + inst.str());
  PairRelation rel;
  rel.eq.r = inst.r;
  rel.eq.a = inst.a;
  rel.eq.s = inst.s;
  rel.eq.b = inst.b;
  rel.eq.x0 = std::min(s1.x, s2.x);
  rel.eq.y0 = std::min(s1.y, s2.y);
  rel.X = std::max(s1.x, s2.x) - rel.eq.x0;
  rel.Y = std::max(s1.y, s2.y) - rel.eq.y0;
  if (rel.X == 0 && rel.Y == 0) throw std::invalid_argument("pair_equation: duplicate solution");
  rel.eq.m = s1.u == s2.u ? 1 : 0;
  rel.eq.n = s1.v == s2.v ? 1 : 0;
  if (!rel.eq.holds(rel.X, rel.Y))
    throw InconsistencyError("pair_equation: derived relation does not hold for " + inst.str());
  return rel;
}

}  // namespace pillai
