#pragma once

// Constructions of instances with exactly two and exactly three solutions, the
// repunit equation (A^m - 1)/(A - 1) = (B^n - 1)/(B - 1), and the reduction of
// a three-solution set of r a^x - s b^y = c to a solution of it.

#include "pillai/enumerate.hpp"
#include "pillai/lemma_order.hpp"

#include <optional>
#include <vector>

namespace pillai {

/// Least m > 1 such that b^n + sign = a^m l with gcd(l, a) = 1 for some n <= cap.
struct PowerIndex {
  unsigned long m = 0;
  unsigned long n = 0;
  int sign = 1;
};

/// Requires gcd(a, b) = 1. Throws InconclusiveError if no n <= cap qualifies.
PowerIndex least_power_index(const Int& a, const Int& b, unsigned long cap = 256);

struct TwoSolutionLimits {
  unsigned long dx_max = 8;
  unsigned long dy_max = 8;
  /// Exponent box for the exactly-two oracle check.
  unsigned long box = 30;
  /// Cap passed to least_power_index for the precondition.
  unsigned long index_cap = 256;
};

struct TwoSolutionInstance {
  SolutionSet set;  // exactly the two constructed solutions
  unsigned long dx = 0, dy = 0;
  int sign_a = 1, sign_b = 1;  // L = a^dx + sign_a, R' = b^dy + sign_b
};

/// Instances built from r a^{x1} (a^dx +- 1) = s b^{y1} (b^dy +- 1), kept when
/// the oracle finds exactly those two solutions in the box. Requires gcd(a,b)=1,
/// a and b not perfect powers, x1 >= m(a,b), y1 >= m(b,a); throws
/// std::invalid_argument otherwise. Sorted by (r, s, c).
std::vector<TwoSolutionInstance> build_two_solution_instances(const Int& a, const Int& b, unsigned long x1,
                                                              unsigned long y1, const TwoSolutionLimits& limits = {});

struct GoormaghtighSolution {
  Int A, B;
  unsigned long m = 0, n = 0;
  Int value;

  friend bool operator==(const GoormaghtighSolution& l, const GoormaghtighSolution& r);
};

/// (A^m - 1)/(A - 1).
Int repunit(const Int& A, unsigned long m);

struct GoormaghtighCaps {
  unsigned long A_max = 100, B_max = 100;
  unsigned long m_max = 20, n_max = 20;
  /// Largest common value considered; at most 2^64.
  u128 value_cap = static_cast<u128>(~u64{0}) + 1;
};

struct GoormaghtighResult {
  std::vector<GoormaghtighSolution> solutions;  // A < B, n > 2
  std::vector<GoormaghtighSolution> n_two;      // A < B, n = 2
};

/// Hash join of repunit values, ordered by (value, A, m).
GoormaghtighResult goormaghtigh_search(const GoormaghtighCaps& caps);

enum class FamilyVariant { base, min_positive };

struct FamilyRecord {
  FamilyVariant variant = FamilyVariant::base;
  Int a0;
  unsigned long j = 1;
  Int A;
  unsigned long m = 0;
  Int d;
  Int h;  // h for base, h1 for min_positive
  SolutionSet set;
  InstanceFlags flags;
};

/// Three-solution instance of r a^x - s b^y = c with b = dA, d = (A^{m-1}-1)/(A-1).
/// Throws std::invalid_argument unless A >= 2, m >= 3; InconsistencyError if
/// the construction fails to verify.
FamilyRecord family_eq20(const Int& A, unsigned long m, FamilyVariant variant = FamilyVariant::base);

struct GoormaghtighReduction {
  Int R, S, t, T;
  unsigned long g1 = 0, g2 = 0;
  GoormaghtighSolution solution;
};

/// Requires exactly three solutions of r a^x - s b^y = c (u = 0, v = 1) with
/// strictly increasing x and y; throws std::invalid_argument otherwise and
/// InconsistencyError when an implied identity fails.
GoormaghtighReduction reduce_triple(const SolutionSet& set);

}  // namespace pillai
