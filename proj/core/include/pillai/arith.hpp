#pragma once

// Number-theory primitives shared by every other module. Arbitrary precision
// is GMP's mpz_class; the 64-bit helpers are used on the sieve hot path.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pillai {

using Int = mpz_class;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Prime factorization with strictly increasing primes and positive exponents.
struct Factorization {
  std::vector<std::pair<Int, unsigned>> factors;

  Int value() const;
  bool empty() const { return factors.empty(); }
};

struct PerfectPower {
  Int base;
  unsigned exponent = 1;
};

/// Factor n >= 1 by trial division up to `trial_cap`, then Pollard rho.
Factorization factorize(const Int& n, unsigned trial_cap = 1u << 16);

/// Least t >= 1 with g^t == 1 (mod m). Throws std::invalid_argument
/// ("not a unit") when gcd(g, m) != 1, std::domain_error when m < 2.
Int mult_order(const Int& g, const Int& m);

/// Same as mult_order but the caller supplies the factorization of m.
Int mult_order(const Int& g, const Int& m, const Factorization& m_factors);

/// n = base^exponent with exponent maximal. Throws std::domain_error for n < 2.
PerfectPower perfect_power_decompose(const Int& n);

bool is_perfect_power(const Int& n);

/// Largest v with p^v | n. Throws std::domain_error for n == 0 or p < 2.
unsigned p_adic_valuation(const Int& n, const Int& p);

bool is_probable_prime(const Int& n);

Int ipow(const Int& base, unsigned long exponent);

/// If n is a power of base (base >= 2), returns the exponent; otherwise -1.
long exact_log(const Int& n, const Int& base);

Int radical(const Factorization& f);

// 64-bit helpers.

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exponent, u64 m);

u64 gcd_u64(u64 a, u64 b);

/// lcm(a, b), or 0 if it does not fit in 64 bits.
u64 lcm_checked(u64 a, u64 b);

bool is_prime_u64(u64 n);

/// Order of g modulo m for m < 2^63 given the factorization of the group
/// exponent candidate `group_order` (any multiple of the true order).
u64 mult_order_u64(u64 g, u64 m, u64 group_order, const std::vector<u64>& group_order_primes);

std::vector<u64> primes_up_to(u64 limit);

u64 to_u64(const Int& n);
Int from_u64(u64 v);

std::string to_string(const Int& n);

}  // namespace pillai
