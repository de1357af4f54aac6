#include "pillai/model.hpp"

#include <algorithm>
#include <sstream>

namespace pillai {

namespace {

std::vector<std::string> split_commas(std::string_view text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ',') {
      parts.push_back(cur);
      cur.clear();
    } else if (ch != ' ') {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

Int parse_int(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty integer field");
  Int v;
  if (v.set_str(s, 10) != 0) throw std::invalid_argument("malformed integer '" + s + "'");
  return v;
}

unsigned long parse_ulong(const std::string& s) {
  Int v = parse_int(s);
  if (v < 0 || !v.fits_ulong_p()) throw std::invalid_argument("exponent out of range '" + s + "'");
  return v.get_ui();
}

// Split n = rest * base^w with w maximal.
std::pair<Int, unsigned long> strip_powers(Int n, const Int& base) {
  unsigned long w = 0;
  while (mpz_divisible_p(n.get_mpz_t(), base.get_mpz_t())) {
    mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), base.get_mpz_t());
    ++w;
  }
  return {n, w};
}

std::vector<Int> divisors(const Int& n) {
  std::vector<Int> divs{1};
  for (const auto& [p, e] : factorize(n).factors) {
    const std::size_t count = divs.size();
    Int pk = 1;
    for (unsigned i = 1; i <= e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < count; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

}  // namespace

PillaiInstance::PillaiInstance(Int a_, Int b_, Int c_, Int r_, Int s_)
    : a(std::move(a_)), b(std::move(b_)), c(std::move(c_)), r(std::move(r_)), s(std::move(s_)) {}

void PillaiInstance::validate() const {
  if (!valid()) throw std::invalid_argument("instance requires a>1, b>1, c>0, r>0, s>0: " + str());
}

std::string PillaiInstance::str() const {
  std::ostringstream os;
  os << a << ',' << b << ',' << c << ',' << r << ',' << s;
  return os.str();
}

PillaiInstance PillaiInstance::parse(std::string_view text) {
  auto parts = split_commas(text);
  if (parts.size() != 5) throw std::invalid_argument("instance must be 'a,b,c,r,s'");
  PillaiInstance inst(parse_int(parts[0]), parse_int(parts[1]), parse_int(parts[2]), parse_int(parts[3]),
                      parse_int(parts[4]));
  inst.validate();
  return inst;
}

bool operator==(const PillaiInstance& l, const PillaiInstance& r) {
  return l.a == r.a && l.b == r.b && l.c == r.c && l.r == r.r && l.s == r.s;
}

std::strong_ordering operator<=>(const PillaiInstance& l, const PillaiInstance& r) {
  for (auto [x, y] : {std::pair{&l.a, &r.a}, {&l.b, &r.b}, {&l.c, &r.c}, {&l.r, &r.r}, {&l.s, &r.s}}) {
    int c = cmp(*x, *y);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::string SignedSolution::str() const {
  return std::to_string(x) + ',' + std::to_string(y) + ',' + std::to_string(u) + ',' + std::to_string(v);
}

SignedSolution SignedSolution::parse(std::string_view text) {
  auto parts = split_commas(text);
  if (parts.size() != 4) throw std::invalid_argument("solution must be 'x,y,u,v'");
  SignedSolution s{parse_ulong(parts[0]), parse_ulong(parts[1]), static_cast<unsigned>(parse_ulong(parts[2])),
                   static_cast<unsigned>(parse_ulong(parts[3]))};
  if (s.u > 1 || s.v > 1) throw std::invalid_argument("sign bits must be 0 or 1");
  return s;
}

Int evaluate(const PillaiInstance& inst, const SignedSolution& sol) {
  Int left = inst.r * ipow(inst.a, sol.x);
  Int right = inst.s * ipow(inst.b, sol.y);
  if (sol.u) left = -left;
  if (sol.v) right = -right;
  return left + right;
}

bool check_solution(const PillaiInstance& inst, const SignedSolution& sol) {
  return sol.u <= 1 && sol.v <= 1 && evaluate(inst, sol) == inst.c;
}

SolutionSet::SolutionSet(PillaiInstance inst, std::vector<SignedSolution> sols) : inst_(std::move(inst)) {
  std::sort(sols.begin(), sols.end());
  sols.erase(std::unique(sols.begin(), sols.end()), sols.end());
  for (const auto& s : sols) {
    if (!check_solution(inst_, s))
      throw std::invalid_argument("solution " + s.str() + " does not satisfy " + inst_.str());
  }
  sols_ = std::move(sols);
}

const SignedSolution& SolutionSet::least() const {
  if (sols_.empty()) throw std::invalid_argument("empty solution set has no least solution");
  return sols_.front();
}

InstanceFlags classify_instance(const PillaiInstance& inst) {
  InstanceFlags f;
  f.improper = mpz_divisible_p(inst.r.get_mpz_t(), inst.a.get_mpz_t()) ||
               mpz_divisible_p(inst.s.get_mpz_t(), inst.b.get_mpz_t());
  f.redundant = is_perfect_power(inst.a) || is_perfect_power(inst.b);
  return f;
}

std::optional<ReducibleWitness> classify_reducible(const SolutionSet& set, ReducibilityMode mode) {
  if (set.empty()) throw std::invalid_argument("classify_reducible: empty solution set");
  const auto& inst = set.instance();
  const auto& least = set.least();
  const Int left = inst.r * ipow(inst.a, least.x);
  const Int right = inst.s * ipow(inst.b, least.y);
  Int g;
  mpz_gcd(g.get_mpz_t(), left.get_mpz_t(), right.get_mpz_t());
  if (g == 1) return std::nullopt;

  for (const Int& k : divisors(g)) {
    if (k == 1) continue;
    auto [r1, w] = strip_powers(left / k, inst.a);
    auto [s1, z] = strip_powers(right / k, inst.b);
    if (mode == ReducibilityMode::positive_only && (w == 0 || z == 0)) continue;
    return ReducibleWitness{k, r1, s1, w, z};
  }
  return std::nullopt;
}

EqualXStructure classify_equal_x(const PillaiInstance& inst, const SignedSolution& s1, const SignedSolution& s2) {
  if (s1.x != s2.x || s1.y >= s2.y) throw std::invalid_argument("classify_equal_x: need x1 == x2 and y1 < y2");
  if (!check_solution(inst, s1) || !check_solution(inst, s2))
    throw std::invalid_argument("classify_equal_x: solutions do not verify");
  if (inst.b != 2 || inst.s != 1 || s1.y != 1)
    throw InconsistencyError("equal-x pair without b = 2, s = 1, y1 = 1: " + inst.str());
  EqualXStructure out;
  out.h = s2.y - s1.y;
  const Int left = inst.r * ipow(inst.a, s1.x);
  const Int two_h = ipow(Int(2), out.h);
  if (left == two_h + 1) {
    out.sign = 1;
  } else if (left == two_h - 1) {
    out.sign = -1;
  } else {
    throw InconsistencyError("equal-x pair with r a^x1 not of the form 2^h +- 1: " + inst.str());
  }
  if (inst.c != two_h - out.sign) throw InconsistencyError("equal-x pair with c != 2^h -+ 1: " + inst.str());
  return out;
}

const std::vector<PillaiInstance>& equal_x_exceptions() {
  static const std::vector<PillaiInstance> list = {
      {3, 2, 1, 1, 1},
      {3, 2, 5, 1, 1},
      {3, 2, 7, 1, 1},
      {5, 2, 3, 1, 1},
  };
  return list;
}

}  // namespace pillai
