#pragma once

// Brute-force ground truth: every solution inside an exponent box, and the
// difference relation linking two solutions of the same instance.

#include "pillai/model.hpp"

#include <string>

namespace pillai {

enum class SignMode {
  all,       // all four (u, v)
  plus_minus,  // only (u, v) = (0, 1)
};

struct EnumerationBounds {
  unsigned long x_max = 0;
  unsigned long y_max = 0;
  unsigned min_exponent = 1;
  SignMode sign_mode = SignMode::all;
};

SolutionSet enumerate_solutions(const PillaiInstance& inst, const EnumerationBounds& bounds);

/// Same box scanned with y in the outer loop; used to cross-check the
/// primary scan.
SolutionSet enumerate_solutions_y_outer(const PillaiInstance& inst, const EnumerationBounds& bounds);

/// r a^{x0} (a^X + (-1)^m) = s b^{y0} (b^Y + (-1)^n) in the unknowns X, Y.
struct PairEquation {
  Int r, a, s, b;
  unsigned long x0 = 0, y0 = 0;
  unsigned m = 1, n = 1;

  Int lhs(unsigned long X) const;
  Int rhs(unsigned long Y) const;
  bool holds(unsigned long X, unsigned long Y) const { return lhs(X) == rhs(Y); }

  /// Canonical "r,a,s,b,x0,y0,m,n".
  std::string str() const;
  static PairEquation parse(std::string_view text);

  friend bool operator==(const PairEquation& l, const PairEquation& r);
};

/// A pair equation together with one of its solutions.
struct PairRelation {
  PairEquation eq;
  unsigned long X = 0, Y = 0;
};

/// Relation between two distinct solutions of `inst`. m = 1 iff the
/// a-terms carry the same sign; n likewise for the b-terms.
PairRelation pair_equation(const PillaiInstance& inst, const SignedSolution& s1, const SignedSolution& s2);

}  // namespace pillai
