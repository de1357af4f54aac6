#include "doctest.h"
#include "oracles.hpp"
#include "pillai/arith.hpp"

using namespace pillai;

TEST_CASE("mult_order examples") {
  CHECK(mult_order(2, 7) == 3);
  CHECK(mult_order(1, 5) == 1);
  CHECK(mult_order(3, 8) == 2);
  CHECK_THROWS_AS(mult_order(2, 8), std::invalid_argument);
  CHECK_THROWS_AS(mult_order(3, 1), std::domain_error);
}

TEST_CASE("mult_order matches repeated multiplication") {
  for (unsigned long m = 2; m < 400; ++m) {
    for (unsigned long g = 1; g < m; g += 7) {
      if (oracle::gcd(g, m) != 1) continue;
      const Int t = mult_order(g, m);
      CHECK(t == oracle::order(g, m));
    }
  }
}

TEST_CASE("mult_order divides the group order of a prime modulus") {
  for (u64 p : primes_up_to(2000)) {
    if (p < 5) continue;
    for (unsigned long g : {2ul, 3ul, 10ul}) {
      if (g % p == 0) continue;
      const Int t = mult_order(g, p);
      CHECK(Int(p - 1) % t == 0);
    }
  }
}

TEST_CASE("mult_order on large prime powers") {
  const Int m = ipow(Int(1009), 3);
  const Int t = mult_order(3, m);
  Int check;
  mpz_powm(check.get_mpz_t(), Int(3).get_mpz_t(), t.get_mpz_t(), m.get_mpz_t());
  CHECK(check == 1);
  for (const auto& pe : factorize(t).factors) {
    const Int smaller = t / pe.first;
    mpz_powm(check.get_mpz_t(), Int(3).get_mpz_t(), smaller.get_mpz_t(), m.get_mpz_t());
    CHECK(check != 1);
  }
}

TEST_CASE("mult_order_u64 agrees with the big-integer version") {
  for (unsigned long m = 3; m < 300; m += 2) {
    if (!is_prime_u64(m)) continue;
    std::vector<u64> ps;
    for (const auto& pe : factorize(Int(m - 1)).factors) ps.push_back(pe.first.get_ui());
    for (u64 g = 2; g < m; g += 5) CHECK(Int(mult_order_u64(g, m, m - 1, ps)) == mult_order(g, m));
  }
}

TEST_CASE("perfect_power_decompose examples") {
  auto d = perfect_power_decompose(64);
  CHECK(d.base == 2);
  CHECK(d.exponent == 6);
  d = perfect_power_decompose(12);
  CHECK(d.base == 12);
  CHECK(d.exponent == 1);
  d = perfect_power_decompose(36);
  CHECK(d.base == 6);
  CHECK(d.exponent == 2);
  CHECK_THROWS_AS(perfect_power_decompose(1), std::domain_error);
  CHECK_THROWS_AS(perfect_power_decompose(0), std::domain_error);
}

TEST_CASE("perfect_power_decompose matches a naive search and round-trips") {
  for (unsigned long n = 2; n < 5000; ++n) {
    const auto d = perfect_power_decompose(n);
    const auto [b, e] = oracle::perfect_power(n);
    CHECK(d.base == b);
    CHECK(d.exponent == e);
    CHECK(ipow(d.base, d.exponent) == n);
    CHECK(is_perfect_power(n) == (e > 1));
  }
  const Int big = ipow(Int(6), 37);
  const auto d = perfect_power_decompose(big);
  CHECK(d.base == 6);
  CHECK(d.exponent == 37);
  CHECK(!is_perfect_power(ipow(Int(6), 37) + 1));
}

TEST_CASE("p_adic_valuation examples") {
  CHECK(p_adic_valuation(80, 2) == 4);
  CHECK(p_adic_valuation(7, 5) == 0);
  CHECK(p_adic_valuation(9, 3) == 2);
  CHECK(p_adic_valuation(-48, 2) == 4);
  CHECK_THROWS_AS(p_adic_valuation(0, 3), std::domain_error);
}

TEST_CASE("p_adic_valuation of p^k m") {
  for (unsigned long p : {2ul, 3ul, 5ul, 7ul, 101ul}) {
    for (unsigned k = 0; k < 40; k += 3) {
      for (unsigned long m : {1ul, 2ul, 3ul, 11ul, 1001ul}) {
        if (m % p == 0) continue;
        const Int n = ipow(Int(p), k) * m;
        CHECK(p_adic_valuation(n, p) == k);
        CHECK(p_adic_valuation(n, p) == oracle::valuation(n, p));
      }
    }
  }
}

TEST_CASE("factorize reconstructs its argument") {
  for (unsigned long n = 1; n < 3000; ++n) {
    const auto f = factorize(n);
    CHECK(f.value() == n);
    for (const auto& pe : f.factors) CHECK(is_probable_prime(pe.first));
  }
  const Int n = Int("1000000007") * Int("998244353") * 4;
  const auto f = factorize(n);
  REQUIRE(f.factors.size() == 3);
  CHECK(f.factors[0].first == 2);
  CHECK(f.factors[0].second == 2);
  CHECK(f.factors[1].first == Int("998244353"));
  CHECK(f.factors[2].first == Int("1000000007"));
  CHECK_THROWS_AS(factorize(0), std::domain_error);
}

TEST_CASE("exact_log and radical") {
  CHECK(exact_log(81, 3) == 4);
  CHECK(exact_log(1, 7) == 0);
  CHECK(exact_log(82, 3) == -1);
  CHECK(radical(factorize(360)) == 30);
}

TEST_CASE("64-bit helpers") {
  CHECK(powmod(3, 200, 1000000007ull) == Int(ipow(Int(3), 200) % 1000000007).get_ui());
  CHECK(gcd_u64(84, 36) == 12);
  CHECK(lcm_checked(4, 6) == 12);
  CHECK(lcm_checked(u64{1} << 40, (u64{1} << 40) - 1) == 0);
  const auto ps = primes_up_to(100);
  CHECK(ps.size() == 25);
  for (u64 n = 0; n < 2000; ++n) CHECK(is_prime_u64(n) == is_probable_prime(Int(n)));
  CHECK(is_prime_u64(4611686018427387847ull));
  CHECK(to_u64(from_u64(~u64{0})) == ~u64{0});
  CHECK_THROWS_AS(to_u64(ipow(Int(2), 64)), std::overflow_error);
  CHECK(to_string(ipow(Int(10), 20)) == "100000000000000000000");
}
