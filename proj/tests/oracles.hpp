#pragma once

// Brute-force reference implementations. Everything here is deliberately
// naive and shares no code with the library beyond the Int type.

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <tuple>
#include <vector>

namespace oracle {

using Int = mpz_class;

inline Int pow(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

inline Int gcd(const Int& x, const Int& y) {
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g;
}

/// Least t >= 1 with g^t = 1 mod m by repeated multiplication; 0 if none within cap.
inline unsigned long order(unsigned long g, unsigned long m, unsigned long cap = 10'000'000) {
  unsigned long long x = g % m;
  for (unsigned long t = 1; t <= cap; ++t) {
    if (x == 1 % m) return t;
    x = x * g % m;
  }
  return 0;
}

inline unsigned valuation(Int n, const Int& p) {
  unsigned k = 0;
  while (n != 0 && n % p == 0) {
    n /= p;
    ++k;
  }
  return k;
}

/// (base, exponent) with n = base^exponent and exponent maximal, by trying
/// every base up to sqrt(n) for small n.
inline std::pair<unsigned long, unsigned> perfect_power(unsigned long n) {
  for (unsigned long b = 2; b * b <= n; ++b) {
    unsigned long long v = b;
    unsigned e = 1;
    while (v < n) {
      v *= b;
      ++e;
    }
    if (v == n) return {b, e};
  }
  return {n, 1};
}

struct Sol {
  unsigned long x, y;
  unsigned u, v;
  friend bool operator==(const Sol&, const Sol&) = default;
  friend auto operator<=>(const Sol&, const Sol&) = default;
};

/// Every (x, y, u, v) in the box by direct evaluation of each term.
inline std::vector<Sol> solutions(const Int& a, const Int& b, const Int& c, const Int& r, const Int& s,
                                  unsigned long lo, unsigned long x_max, unsigned long y_max, bool all_signs) {
  std::vector<Sol> out;
  for (unsigned long x = lo; x <= x_max; ++x) {
    const Int R = r * pow(a, x);
    for (unsigned long y = lo; y <= y_max; ++y) {
      const Int S = s * pow(b, y);
      for (unsigned u = 0; u < 2; ++u)
        for (unsigned v = 0; v < 2; ++v) {
          if (!all_signs && !(u == 0 && v == 1)) continue;
          const Int lhs = (u ? -R : R) + (v ? -S : S);
          if (lhs == c) out.push_back({x, y, u, v});
        }
    }
  }
  return out;
}

/// (X, Y) in [1, max]^2 with r a^x0 (a^X + (-1)^m) = s b^y0 (b^Y + (-1)^n).
inline std::vector<std::pair<unsigned long, unsigned long>> pair_solutions(const Int& r, const Int& a, const Int& s,
                                                                           const Int& b, unsigned long x0,
                                                                           unsigned long y0, unsigned m, unsigned n,
                                                                           unsigned long max) {
  std::vector<std::pair<unsigned long, unsigned long>> out;
  std::map<Int, unsigned long> right;
  for (unsigned long Y = 1; Y <= max; ++Y) right[s * pow(b, y0) * (pow(b, Y) + (n ? -1 : 1))] = Y;
  for (unsigned long X = 1; X <= max; ++X) {
    const Int l = r * pow(a, x0) * (pow(a, X) + (m ? -1 : 1));
    auto it = right.find(l);
    if (it != right.end()) out.emplace_back(X, it->second);
  }
  return out;
}

/// (A^m - 1)/(A - 1) by summation.
inline Int repunit(unsigned long A, unsigned long m) {
  Int v = 0, p = 1;
  for (unsigned long i = 0; i < m; ++i) {
    v += p;
    p *= A;
  }
  return v;
}

inline std::mt19937_64& rng() {
  static std::mt19937_64 g(20240601);
  return g;
}

inline unsigned long uniform(unsigned long lo, unsigned long hi) {
  return std::uniform_int_distribution<unsigned long>(lo, hi)(rng());
}

}  // namespace oracle
