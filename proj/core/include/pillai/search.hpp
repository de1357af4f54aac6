#pragma once

// Grid searches over (a, b, r, s): the small-exponent scan for c with three
// solutions, and the certified range search built on verify_at_most_two.

#include "pillai/sieve.hpp"

#include <functional>
#include <set>
#include <string>
#include <vector>

namespace pillai {

struct SearchFilters {
  bool require_coprime = true;     // gcd(ra, sb) = 1
  bool exclude_a_divides_r = false;
  bool exclude_b_divides_s = false;
  bool exclude_perfect_powers = false;
};

/// Tuples with a_min <= a <= a_max, 1 < b < a, 1 <= r <= r_max, 1 <= s <= s_max.
struct SearchRange {
  unsigned long a_min = 3, a_max = 8;
  unsigned long r_max = 10, s_max = 10;
  /// Exponent box for the first two solutions and for the third.
  unsigned long pair_cap = 12, third_cap = 24;
  SearchFilters filters;
  unsigned min_exponent = 1;

  /// Throws std::invalid_argument on an empty or malformed range.
  void validate() const;
};

struct Tuple {
  unsigned long r, a, s, b;
  std::string str() const;  // "r,a,s,b"
  friend auto operator<=>(const Tuple&, const Tuple&) = default;
};

/// Every tuple in the range passing the filters, ordered by (a, b, r, s).
std::vector<Tuple> range_tuples(const SearchRange& range);

/// The filters of the small-exponent scan: coprime, a !| r, b !| s, no perfect powers.
SearchRange wide_defaults(unsigned long a_max, unsigned long rs_max);

/// Instances with two solutions in the pair box and a third in the larger box,
/// as the full solution set in the larger box, ordered by (a, b, r, s, c).
std::vector<SolutionSet> wide_search(const SearchRange& range);

/// Result of one (r, a, s, b) tuple of the certified search.
struct TupleResult {
  Tuple tuple;
  std::vector<SolutionSet> exceptional;           // oracle-confirmed, sorted by c
  std::vector<SieveCertificate> certificates;     // non-Empty sub-certificates
  std::vector<std::string> residual;              // inconclusive sub-problems
  std::size_t subproblems = 0;
};

/// verify_at_most_two on one tuple, with each exceptional set confirmed by the
/// enumeration oracle. Throws InconsistencyError on disagreement.
TupleResult corollary_tuple(const Tuple& t, u64 bound = kGlobalExponentBound, const SieveBudget& budget = {});

/// A shard is all tuples sharing (a, b).
struct Shard {
  unsigned long a, b;
  std::string str() const;  // "a,b"
  friend auto operator<=>(const Shard&, const Shard&) = default;
};

struct CorollaryOptions {
  u64 bound = kGlobalExponentBound;
  SieveBudget budget;
  unsigned threads = 1;
  std::set<Shard> skip_shards;
  /// Stop after this many shards complete (0 = no limit). Shards finishing
  /// concurrently with the limit may be dropped.
  std::size_t max_shards = 0;
  /// Called once per completed shard, serialised, with its tuple results.
  std::function<void(const Shard&, const std::vector<TupleResult>&)> on_shard;
};

struct CorollaryResult {
  std::vector<TupleResult> tuples;  // completed tuples, ordered by (a, b, r, s)
  std::vector<Shard> completed;     // sorted
  bool interrupted = false;

  std::vector<SolutionSet> exceptional() const;  // ordered by (a, b, r, s, c)
  std::vector<std::string> residual() const;
};

/// Runs corollary_tuple over the range (filters usually just gcd(ra, sb) = 1).
CorollaryResult corollary_search(const SearchRange& range, const CorollaryOptions& options = {});

std::vector<Shard> range_shards(const SearchRange& range);

}  // namespace pillai
