#pragma once

// Bootstrapping congruence sieve on the exponent differences (X, Y) of
//   r a^{x0} (a^X + (-1)^m) = s b^{y0} (b^Y + (-1)^n),   X, Y >= 1,
// with gcd(r a, s b) = 1. The state is a set of residue pairs
// (X mod M_X, Y mod M_Y) that every solution must fall into; auxiliary prime
// powers q^k with q not dividing ab refine it until the set is empty or every
// surviving class is pinned to an explicitly verified solution.

#include "pillai/enumerate.hpp"

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pillai {

/// 8 * 10^14: every exponent of a solution triple lies below this.
inline constexpr u64 kGlobalExponentBound = 800'000'000'000'000ULL;

/// Largest exponent for which candidates are resolved by exact big-integer
/// evaluation rather than left to further sieving.
inline constexpr unsigned long kExactResolutionLimit = 2048;

/// An auxiliary modulus q^k with the orders of a and b modulo it.
struct PrimeInfo {
  u64 q = 0;
  unsigned k = 1;
  u64 modulus = 0;
  u64 ord_a = 0;
  u64 ord_b = 0;

  friend bool operator==(const PrimeInfo&, const PrimeInfo&) = default;
};

struct ResidueClass {
  u64 x = 0;  // X mod M_X
  u64 y = 0;  // Y mod M_Y

  friend bool operator==(const ResidueClass&, const ResidueClass&) = default;
  friend auto operator<=>(const ResidueClass&, const ResidueClass&) = default;
};

struct SieveState {
  u64 mod_x = 1;
  u64 mod_y = 1;
  std::vector<ResidueClass> residues;  // sorted
  std::vector<PrimeInfo> primes;       // in application order

  double density() const;
  friend bool operator==(const SieveState&, const SieveState&) = default;
};

/// Exponents E >= 1 with coeff * other^{e0} | g^E + sign and the quotient
/// prime to `other`, as residues modulo `modulus`. Empty when impossible.
struct ExponentClasses {
  u64 modulus = 1;
  std::vector<u64> residues;
  /// Least positive element of the coarser set {E : coeff other^{e0} | g^E + sign};
  /// 0 when that set is empty. Non-decreasing in e0.
  Int least_candidate = 0;
};

/// sign_bit = 1 means g^E - 1, 0 means g^E + 1.
ExponentClasses exponent_classes(const Int& g, const Int& coeff, const Int& other, unsigned long e0,
                                 unsigned sign_bit);

/// Auxiliary moduli q^k <= limit (q prime, q not dividing ab) in increasing
/// order, with orders of a and b. Cached per (a, b).
class OrderTable {
 public:
  OrderTable(const Int& a, const Int& b, std::size_t max_entries);
  const std::vector<PrimeInfo>& entries() const { return entries_; }
  static std::shared_ptr<const OrderTable> get(const Int& a, const Int& b, std::size_t max_entries);

  /// Entries whose order of a (side 0) or b (side 1) has p-adic valuation exactly e >= 1.
  const std::vector<std::uint32_t>& with_component(int side, u64 p, unsigned e) const;
  /// Number of distinct primes dividing that order.
  unsigned component_count(int side, std::size_t i) const { return counts_[side][i]; }

 private:
  std::vector<PrimeInfo> entries_;
  std::map<std::pair<u64, unsigned>, std::vector<std::uint32_t>> index_[2];
  std::vector<std::uint8_t> counts_[2];
};

struct SieveBudget {
  std::size_t max_primes = 5000;
  std::size_t max_residues = 1'000'000;
  u64 max_modulus = ~u64{0};
  unsigned long box = 64;
};

enum class CertificateKind { Empty, BoundExceeded, Candidates, Inconclusive };

std::string to_string(CertificateKind kind);
CertificateKind certificate_kind_from_string(const std::string& s);

struct ExponentPair {
  u64 X = 0, Y = 0;
  friend bool operator==(const ExponentPair&, const ExponentPair&) = default;
  friend auto operator<=>(const ExponentPair&, const ExponentPair&) = default;
};

struct SieveCertificate {
  PairEquation eq;
  CertificateKind kind = CertificateKind::Inconclusive;
  std::vector<ExponentPair> solutions;  // sorted
  SieveState state;
  u64 bound = kGlobalExponentBound;
  unsigned long box = 64;
};

/// State implied by the exact a- and b-adic valuations of both sides.
SieveState initial_state(const PairEquation& eq);

/// Lift to lcm moduli with ord(a), ord(b) mod q^k and keep the lifts that
/// satisfy the equation modulo q^k. Throws std::invalid_argument if q | ab,
/// std::overflow_error if a modulus would exceed 64 bits.
SieveState refine_step(const SieveState& state, const PairEquation& eq, const PrimeInfo& prime);

/// Run the sieve to a conclusion or until the budget is exhausted.
SieveCertificate sieve_pair(const PairEquation& eq, u64 bound = kGlobalExponentBound, const SieveBudget& budget = {});

struct ReplayResult {
  bool match = false;
  std::string detail;
};

/// Re-derive the state from the recorded moduli sequence alone and compare.
/// Throws std::invalid_argument when a recorded prime is invalid.
ReplayResult replay_certificate(const SieveCertificate& cert);

/// Exact solution of the pair equation with one unknown fixed.
std::optional<u64> solve_for_y(const PairEquation& eq, u64 X);
std::optional<u64> solve_for_x(const PairEquation& eq, u64 Y);

struct BaseExponentCaps {
  // First inadmissible base exponents: solutions need x0 < k_x and y0 < k_y.
  unsigned long k_x = 0;
  unsigned long k_y = 0;
  // Least admissible X at y0 = k_y and least Y at x0 = k_x (0 if none): never below bound.
  Int witness_x;
  Int witness_y;
};

/// Caps such that x0 >= k_x or y0 >= k_y admits no solution below the bound.
/// Requires gcd(ra, sb) = 1. Throws InconclusiveError past `max_exponent`.
BaseExponentCaps bound_base_exponents(const Int& r, const Int& a, const Int& s, const Int& b, unsigned m, unsigned n,
                                      u64 bound = kGlobalExponentBound, unsigned long max_exponent = 4096);

struct AtMostTwoReport {
  Int r, a, s, b;
  std::vector<PairRelation> quadruples;
  /// c values produced by two or more distinct solution pairs.
  std::vector<Int> duplicate_c;
  /// Every (c, solutions) with at least three distinct solutions.
  std::vector<SolutionSet> exceptional;
  /// Certificates of every sub-problem that is not Empty.
  std::vector<SieveCertificate> certificates;
  std::vector<std::string> inconclusive;
  std::map<std::pair<unsigned, unsigned>, BaseExponentCaps> caps;
  std::size_t subproblems = 0;

  bool complete() const { return inconclusive.empty(); }
};

/// Every solution pair with positive exponents below the bound, and the
/// candidate c values they produce.
AtMostTwoReport verify_at_most_two(const Int& r, const Int& a, const Int& s, const Int& b,
                                   u64 bound = kGlobalExponentBound, const SieveBudget& budget = {},
                                   unsigned min_base_exponent = 1);

/// Solutions (with c) realised by one solution of a pair equation.
struct PairRealisation {
  Int c;
  SignedSolution first, second;
};
std::vector<PairRealisation> realise_pair(const PairRelation& rel);

}  // namespace pillai
