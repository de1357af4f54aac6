#include "pillai/arith.hpp"

#include <algorithm>
#include <map>

namespace pillai {

namespace {

const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = primes_up_to(1u << 16);
  return primes;
}

Int pollard_rho(const Int& n) {
  if (mpz_even_p(n.get_mpz_t())) return 2;
  for (unsigned long c = 1;; ++c) {
    Int x = 2, y = 2, d = 1;
    auto step = [&](Int& v) {
      v = v * v + c;
      v %= n;
    };
    while (d == 1) {
      step(x);
      step(y);
      step(y);
      Int diff = x - y;
      mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
      mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    }
    if (d != n) return d;
  }
}

void factor_into(const Int& n, std::map<Int, unsigned>& out) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    ++out[n];
    return;
  }
  Int d = pollard_rho(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

}  // namespace

Int Factorization::value() const {
  Int v = 1;
  for (const auto& [p, e] : factors) v *= ipow(p, e);
  return v;
}

bool is_probable_prime(const Int& n) { return n >= 2 && mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

Int ipow(const Int& base, unsigned long exponent) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exponent);
  return r;
}

long exact_log(const Int& n, const Int& base) {
  if (base < 2 || n < 1) return -1;
  Int v = n;
  long e = 0;
  while (v > 1) {
    if (!mpz_divisible_p(v.get_mpz_t(), base.get_mpz_t())) return -1;
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), base.get_mpz_t());
    ++e;
  }
  return e;
}

Factorization factorize(const Int& n, unsigned trial_cap) {
  if (n < 1) throw std::domain_error("factorize: argument must be positive");
  std::map<Int, unsigned> acc;
  Int rest = n;
  for (u64 p : small_primes()) {
    if (p > trial_cap) break;
    if (Int(p) * p > rest) break;
    unsigned e = 0;
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
      ++e;
    }
    if (e) acc[Int(p)] += e;
  }
  factor_into(rest, acc);
  Factorization f;
  for (auto& [p, e] : acc) f.factors.emplace_back(p, e);
  return f;
}

Int radical(const Factorization& f) {
  Int r = 1;
  for (const auto& pe : f.factors) r *= pe.first;
  return r;
}

Int mult_order(const Int& g, const Int& m) {
  if (m < 2) throw std::domain_error("mult_order: modulus must be >= 2");
  return mult_order(g, m, factorize(m));
}

Int mult_order(const Int& g_in, const Int& m, const Factorization& m_factors) {
  if (m < 2) throw std::domain_error("mult_order: modulus must be >= 2");
  Int g = g_in % m;
  if (g < 0) g += m;
  Int d;
  mpz_gcd(d.get_mpz_t(), g.get_mpz_t(), m.get_mpz_t());
  if (d != 1) throw std::invalid_argument("not a unit");

  // phi(m) and its factorization, assembled from the factorization of m.
  std::map<Int, unsigned> phi_f;
  Int phi = 1;
  for (const auto& [p, e] : m_factors.factors) {
    phi *= ipow(p, e - 1) * (p - 1);
    if (e > 1) phi_f[p] += e - 1;
    for (const auto& [q, k] : factorize(p - 1).factors) phi_f[q] += k;
  }
  Int t = phi;
  Int tmp;
  for (const auto& [q, k] : phi_f) {
    for (unsigned i = 0; i < k; ++i) {
      Int cand = t / q;
      mpz_powm(tmp.get_mpz_t(), g.get_mpz_t(), cand.get_mpz_t(), m.get_mpz_t());
      if (tmp != 1) break;
      t = cand;
    }
  }
  return t;
}

PerfectPower perfect_power_decompose(const Int& n) {
  if (n < 2) throw std::domain_error("perfect_power_decompose: n must be >= 2");
  PerfectPower out{n, 1};
  bool changed = true;
  while (changed) {
    changed = false;
    const auto bits = mpz_sizeinbase(out.base.get_mpz_t(), 2);
    for (u64 e : small_primes()) {
      if (e > bits) break;
      Int root;
      if (mpz_root(root.get_mpz_t(), out.base.get_mpz_t(), e) != 0) {
        out.base = root;
        out.exponent *= static_cast<unsigned>(e);
        changed = true;
        break;
      }
    }
  }
  return out;
}

bool is_perfect_power(const Int& n) { return n >= 2 && perfect_power_decompose(n).exponent > 1; }

unsigned p_adic_valuation(const Int& n, const Int& p) {
  if (n == 0) throw std::domain_error("p_adic_valuation: valuation of 0 is infinite");
  if (p < 2) throw std::domain_error("p_adic_valuation: p must be prime");
  Int v = n;
  if (v < 0) v = -v;
  unsigned e = 0;
  while (mpz_divisible_p(v.get_mpz_t(), p.get_mpz_t())) {
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), p.get_mpz_t());
    ++e;
  }
  return e;
}

u64 powmod(u64 base, u64 exponent, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exponent) {
    if (exponent & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

u64 lcm_checked(u64 a, u64 b) {
  if (a == 0 || b == 0) return 0;
  u128 l = static_cast<u128>(a / gcd_u64(a, b)) * b;
  if (l > static_cast<u128>(~u64{0})) return 0;
  return static_cast<u64>(l);
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

u64 mult_order_u64(u64 g, u64 m, u64 group_order, const std::vector<u64>& group_order_primes) {
  u64 t = group_order;
  for (u64 q : group_order_primes) {
    while (t % q == 0 && powmod(g, t / q, m) == 1) t /= q;
  }
  return t;
}

std::vector<u64> primes_up_to(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (u64 i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

u64 to_u64(const Int& n) {
  if (n < 0 || mpz_sizeinbase(n.get_mpz_t(), 2) > 64) throw std::overflow_error("value does not fit in 64 bits");
  u64 v = 0;
  mpz_export(&v, nullptr, -1, sizeof(u64), 0, 0, n.get_mpz_t());
  return v;
}

Int from_u64(u64 v) {
  Int r;
  mpz_import(r.get_mpz_t(), 1, -1, sizeof(u64), 0, 0, &v);
  return r;
}

std::string to_string(const Int& n) { return n.get_str(); }

}  // namespace pillai
