#pragma once

// Instances, signed solutions and the solution-set taxonomy
// (improper / redundant / reducible, equal-x structure).

#include "pillai/arith.hpp"

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pillai {

/// Raised when an input contradicts a structural fact that must hold.
class InconsistencyError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Coefficients of (-1)^u r a^x + (-1)^v s b^y = c.
struct PillaiInstance {
  Int a, b, c, r, s;

  PillaiInstance() = default;
  PillaiInstance(Int a_, Int b_, Int c_, Int r_, Int s_);

  /// a>1, b>1, c>0, r>0, s>0.
  bool valid() const { return a > 1 && b > 1 && c > 0 && r > 0 && s > 0; }
  void validate() const;

  /// Canonical "a,b,c,r,s".
  std::string str() const;
  static PillaiInstance parse(std::string_view text);

  friend bool operator==(const PillaiInstance& l, const PillaiInstance& r);
  friend std::strong_ordering operator<=>(const PillaiInstance& l, const PillaiInstance& r);
};

struct SignedSolution {
  unsigned long x = 0;
  unsigned long y = 0;
  unsigned u = 0;
  unsigned v = 0;

  std::string str() const;
  static SignedSolution parse(std::string_view text);

  friend bool operator==(const SignedSolution&, const SignedSolution&) = default;
  friend auto operator<=>(const SignedSolution&, const SignedSolution&) = default;
};

/// Left-hand side (-1)^u r a^x + (-1)^v s b^y.
Int evaluate(const PillaiInstance& inst, const SignedSolution& sol);

bool check_solution(const PillaiInstance& inst, const SignedSolution& sol);

/// Sorted, duplicate-free list of verified solutions.
class SolutionSet {
 public:
  SolutionSet() = default;
  /// Throws std::invalid_argument if any member fails to verify.
  SolutionSet(PillaiInstance inst, std::vector<SignedSolution> sols);

  const PillaiInstance& instance() const { return inst_; }
  const std::vector<SignedSolution>& solutions() const { return sols_; }
  std::size_t size() const { return sols_.size(); }
  bool empty() const { return sols_.empty(); }

  /// The least solution in lexicographic (x, y) order.
  const SignedSolution& least() const;

  friend bool operator==(const SolutionSet&, const SolutionSet&) = default;

 private:
  PillaiInstance inst_;
  std::vector<SignedSolution> sols_;
};

struct ReducibleWitness {
  Int k, r1, s1;
  unsigned long w = 0, z = 0;
};

struct InstanceFlags {
  bool improper = false;
  bool redundant = false;
  std::optional<ReducibleWitness> reducible;
};

/// Improper: a | r or b | s. Redundant: a or b is a perfect power.
InstanceFlags classify_instance(const PillaiInstance& inst);

enum class ReducibilityMode {
  standard,       // w, z >= 0
  positive_only,  // w > 0 and z > 0, for sets with min(x, y) > 0
};

/// Smallest k > 1 with r a^{x1} / k = r1 a^w and s b^{y1} / k = s1 b^z, where
/// (x1, y1) is the least solution. w and z are taken maximal for that k.
std::optional<ReducibleWitness> classify_reducible(const SolutionSet& set,
                                                   ReducibilityMode mode = ReducibilityMode::standard);

struct EqualXStructure {
  unsigned long h = 0;
  int sign = 1;  // r a^{x1} = 2^h + sign, c = 2^h - sign
};

/// Structure forced on two solutions sharing x: b = 2, s = 1, y1 = 1.
EqualXStructure classify_equal_x(const PillaiInstance& inst, const SignedSolution& s1, const SignedSolution& s2);

/// Instances where two solutions share x and a third solution exists.
const std::vector<PillaiInstance>& equal_x_exceptions();

}  // namespace pillai
