#include "pillai/lemma_order.hpp"

#include <algorithm>

namespace pillai {

namespace {

bool coprime(const Int& x, const Int& y) {
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g == 1;
}

}  // namespace

bool lemma1_special_case(const Lemma1Input& inp) {
  return mpz_odd_p(inp.r.get_mpz_t()) && mpz_fdiv_ui(inp.a.get_mpz_t(), 4) == 2 && inp.m == 1;
}

unsigned long default_witness_cap(const Lemma1Input& inp) {
  if (!coprime(inp.b, inp.r * inp.a)) return 1'000'000;
  const Int mod = inp.r * ipow(inp.a, inp.m + 1);
  if (mod < 2) return 4;
  const Int ord = mult_order(inp.b, mod);
  if (!ord.fits_ulong_p() || ord > 250'000) return 1'000'000;
  return 4 * ord.get_ui();
}

std::optional<Lemma1Witness> least_witness(const Lemma1Input& inp, unsigned long cap) {
  if (inp.a < 2 || inp.b < 2 || inp.r < 1 || inp.m < 1) throw std::domain_error("least_witness: need a,b>1, r,m>0");
  // (b^y +- 1) / (r a^m) is an integer prime to a iff b^y +- 1 is divisible by
  // r a^m but by no r a^m p for p | a; all of it is visible mod r a^m rad(a).
  const Factorization af = factorize(inp.a);
  const Int base = inp.r * ipow(inp.a, inp.m);
  const Int modulus = base * radical(af);
  Int power = 1;
  for (unsigned long y = 1; y <= cap; ++y) {
    power = power * inp.b % modulus;
    for (int sign : {1, -1}) {
      Int t = power + sign;
      t %= modulus;
      if (t < 0) t += modulus;
      if (!mpz_divisible_p(t.get_mpz_t(), base.get_mpz_t())) continue;
      bool exact = true;
      for (const auto& pe : af.factors) {
        if (mpz_divisible_p(t.get_mpz_t(), Int(base * pe.first).get_mpz_t())) {
          exact = false;
          break;
        }
      }
      if (!exact) continue;
      Lemma1Witness w;
      w.n = y;
      w.sign = sign;
      if (lemma1_special_case(inp)) {
        w.g = std::max(p_adic_valuation(inp.b - 1, 2), p_adic_valuation(inp.b + 1, 2));
        w.h = p_adic_valuation(Int(y), 2);
      }
      return w;
    }
  }
  return std::nullopt;
}

Int lemma1_divisor(const Lemma1Witness& w, const Lemma1Input& inp, unsigned long M) {
  if (M <= inp.m) throw std::domain_error("lemma1_divisor: need M > m");
  Int num = Int(static_cast<unsigned long>(w.n)) * ipow(inp.a, M - inp.m);
  const unsigned shift = w.g + w.h - 1;
  const Int den = ipow(Int(2), shift);
  if (!mpz_divisible_p(num.get_mpz_t(), den.get_mpz_t()))
    throw std::domain_error("lemma1_divisor: 2^(g+h-1) does not divide n a^(M-m)");
  return num / den;
}

bool verify_lemma1(const Lemma1Input& inp, unsigned long M, unsigned long N, unsigned long cap) {
  auto w = least_witness(inp, cap);
  if (!w) throw InconclusiveError("verify_lemma1: no witness below cap");
  const Int d = lemma1_divisor(*w, inp, M);
  return mpz_divisible_p(Int(N).get_mpz_t(), d.get_mpz_t());
}

}  // namespace pillai
