#pragma once

// Least witness n with (b^n +- 1) / (r a^m) an integer prime to a, and the
// divisor n a^{M-m} / 2^{g+h-1} it forces on every N with r a^M | b^N +- 1.

#include "pillai/arith.hpp"

#include <optional>
#include <stdexcept>

namespace pillai {

class InconclusiveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Lemma1Input {
  Int b, r, a;
  unsigned long m = 1;
};

struct Lemma1Witness {
  unsigned long n = 0;
  int sign = 1;
  unsigned g = 1;
  unsigned h = 0;
};

/// True for r odd, a = 2 mod 4, m = 1: the case where g and h can exceed 1, 0.
bool lemma1_special_case(const Lemma1Input& inp);

/// 4 * ord(b mod r a^{m+1}) when gcd(b, r a) = 1, else 10^6.
unsigned long default_witness_cap(const Lemma1Input& inp);

/// Scans y = 1..cap, preferring sign +1 on ties. nullopt if nothing qualifies.
std::optional<Lemma1Witness> least_witness(const Lemma1Input& inp, unsigned long cap);

/// n a^{M-m} / 2^{g+h-1}. Throws std::domain_error if M <= m.
Int lemma1_divisor(const Lemma1Witness& w, const Lemma1Input& inp, unsigned long M);

/// Whether the forced divisor divides N. Throws InconclusiveError if no
/// witness exists below cap.
bool verify_lemma1(const Lemma1Input& inp, unsigned long M, unsigned long N, unsigned long cap);

}  // namespace pillai
