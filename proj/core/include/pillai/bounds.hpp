#pragma once

// Numeric endpoints of the absolute bound: the three-logarithm constant and
// the fixed-point inequality for the largest exponent, plus the elementary
// necessary conditions satisfied by any solution triple.

#include "pillai/model.hpp"

#include <boost/multiprecision/cpp_dec_float.hpp>

#include <string>
#include <vector>

namespace pillai {

using Real = boost::multiprecision::cpp_dec_float_50;

/// (5 16^5 / (6 chi)) e^3 (7 + 2 chi) (3e/2)^chi (20.2 + log(3^5.5 D^2 log(e D))).
/// Throws std::domain_error unless degree >= 1 and chi is 1 or 2.
Real matveev_constant(unsigned degree, unsigned chi);

/// Least integer Z >= 2 from which Z >= 8 log Z / log 2 + C log^2 Z log(4.078 Z)
/// holds. Throws std::domain_error for C <= 0 and std::runtime_error when the
/// crossing lies above 10^18.
u64 solve_global_bound(const Real& C);

/// Scientific notation with `digits` significant digits, e.g. "1.6901816335e10".
std::string format_scientific(const Real& value, unsigned digits);

enum class CheckStatus { pass, fail, not_applicable };
std::string to_string(CheckStatus s);

struct TripleCheck {
  std::string name;
  CheckStatus status = CheckStatus::not_applicable;
};

struct TripleReport {
  unsigned long Z = 0;
  Int J, j;
  Int D_big, d_small;
  std::vector<TripleCheck> checks;

  bool all_pass() const;
};

/// Necessary inequalities for a set of exactly three solutions with positive
/// exponents and gcd(ra, sb) = 1. Checks are not_applicable when those
/// hypotheses fail. Throws std::invalid_argument unless there are three solutions.
TripleReport check_triple_conditions(const SolutionSet& set);

/// check_triple_conditions over every 3-subset of a set with three or more solutions.
std::vector<TripleReport> check_all_triples(const SolutionSet& set);

}  // namespace pillai
