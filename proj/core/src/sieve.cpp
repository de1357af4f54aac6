#include "pillai/sieve.hpp"

#include "pillai/lemma_order.hpp"

#include <algorithm>
#include <cstdint>
#include <mutex>
#include <set>
#include <unordered_map>

namespace pillai {

namespace {

constexpr u64 kTableLimit = 1u << 17;
constexpr std::size_t kGrowthWindow = 256;

std::vector<std::pair<u64, unsigned>> factor_u64(u64 n) {
  static const std::vector<u64> small = primes_up_to(kTableLimit);
  std::vector<std::pair<u64, unsigned>> out;
  for (u64 p : small) {
    if (p * p > n) break;
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  // Any cofactor is prime or has only factors above the table limit, which
  // never occur in a table order.
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool coprime(const Int& x, const Int& y) {
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return g == 1;
}

void require_coprime(const Int& r, const Int& a, const Int& s, const Int& b) {
  if (!coprime(r * a, s * b)) throw std::invalid_argument("sieve requires gcd(r a, s b) = 1");
}

u64 mod_of(const Int& v, u64 m) { return mpz_fdiv_ui(v.get_mpz_t(), m); }

Factorization merge(const Factorization& f, const Factorization& g, unsigned long g_power) {
  std::map<Int, unsigned> acc;
  for (const auto& [p, e] : f.factors) acc[p] += e;
  if (g_power)
    for (const auto& [p, e] : g.factors) acc[p] += static_cast<unsigned>(e * g_power);
  Factorization out;
  for (auto& [p, e] : acc) out.factors.emplace_back(p, e);
  return out;
}

Int order_mod(const Int& g, const Int& modulus, const Factorization& f) {
  if (modulus == 1) return 1;
  return mult_order(g, modulus, f);
}

// Least E >= 0 in the coset {E : g^E == target} where target is 1 (sign_bit=1)
// or -1 (sign_bit=0), together with the order; nullopt when -1 is not a power.
std::optional<Int> coset_start(const Int& g, const Int& modulus, const Int& order, unsigned sign_bit) {
  if (sign_bit == 1 || modulus <= 2) return Int(0);
  if (mpz_odd_p(order.get_mpz_t())) return std::nullopt;
  Int half = order / 2;
  Int t;
  mpz_powm(t.get_mpz_t(), g.get_mpz_t(), half.get_mpz_t(), modulus.get_mpz_t());
  if (t == modulus - 1) return half;
  return std::nullopt;
}

const std::vector<u64>& largest_check_primes() {
  static const std::vector<u64> primes = [] {
    std::vector<u64> out;
    for (u64 v = (u64{1} << 62) - 1; out.size() < 3; v -= 2)
      if (is_prime_u64(v)) out.push_back(v);
    return out;
  }();
  return primes;
}

bool holds_mod(const PairEquation& eq, u64 X, u64 Y, u64 p) {
  const u64 am = mod_of(eq.a, p), bm = mod_of(eq.b, p);
  const u64 ra0 = mulmod(mod_of(eq.r, p), powmod(am, eq.x0, p), p);
  const u64 sb0 = mulmod(mod_of(eq.s, p), powmod(bm, eq.y0, p), p);
  const u64 l = mulmod(ra0, (powmod(am, X, p) + (eq.m ? p - 1 : 1)) % p, p);
  const u64 r = mulmod(sb0, (powmod(bm, Y, p) + (eq.n ? p - 1 : 1)) % p, p);
  return l == r;
}

struct PruneResult {
  bool all_matched = false;
};

// Drops classes that cannot hold a solution below the bound and resolves
// classes whose X (or Y) is pinned by a modulus at least the bound.
PruneResult prune(SieveState& st, const PairEquation& eq, u64 bound, std::set<ExponentPair>& found) {
  PruneResult res;
  res.all_matched = !st.residues.empty();
  std::vector<ResidueClass> kept;
  kept.reserve(st.residues.size());
  for (const auto& cls : st.residues) {
    const u64 xr = cls.x ? cls.x : st.mod_x;
    const u64 yr = cls.y ? cls.y : st.mod_y;
    if (xr >= bound || yr >= bound) continue;
    const bool x_pinned = st.mod_x >= bound;
    const bool y_pinned = st.mod_y >= bound;
    bool matched = false;
    bool drop = false;
    if (x_pinned && xr <= kExactResolutionLimit) {
      auto Y = solve_for_y(eq, xr);
      if (!Y || *Y >= bound || *Y % st.mod_y != cls.y) {
        drop = true;
      } else {
        found.insert({xr, *Y});
        matched = true;
      }
    } else if (y_pinned && yr <= kExactResolutionLimit) {
      auto X = solve_for_x(eq, yr);
      if (!X || *X >= bound || *X % st.mod_x != cls.x) {
        drop = true;
      } else {
        found.insert({*X, yr});
        matched = true;
      }
    } else if (x_pinned && y_pinned) {
      for (u64 p : largest_check_primes()) {
        if (!holds_mod(eq, xr, yr, p)) {
          drop = true;
          break;
        }
      }
    }
    if (drop) continue;
    kept.push_back(cls);
    if (!matched) res.all_matched = false;
  }
  st.residues = std::move(kept);
  if (st.residues.empty()) res.all_matched = false;
  return res;
}

SieveState state_from_classes(const ExponentClasses& ex, const ExponentClasses& ey) {
  SieveState st;
  st.mod_x = ex.modulus;
  st.mod_y = ey.modulus;
  for (u64 x : ex.residues)
    for (u64 y : ey.residues) st.residues.push_back({x, y});
  std::sort(st.residues.begin(), st.residues.end());
  return st;
}

void box_search(const PairEquation& eq, const SieveState& st, u64 bound, unsigned long box,
                std::set<ExponentPair>& found) {
  if (st.residues.empty()) return;
  std::set<u64> xs, ys;
  for (const auto& c : st.residues) {
    xs.insert(c.x);
    ys.insert(c.y);
  }
  auto in_state = [&](u64 X, u64 Y) {
    return std::binary_search(st.residues.begin(), st.residues.end(), ResidueClass{X % st.mod_x, Y % st.mod_y});
  };
  for (u64 X = 1; X <= box && X < bound; ++X) {
    if (!xs.count(X % st.mod_x)) continue;
    if (auto Y = solve_for_y(eq, X); Y && *Y < bound) {
      if (!in_state(X, *Y)) throw InconsistencyError("sieve lost a solution of " + eq.str());
      found.insert({X, *Y});
    }
  }
  for (u64 Y = 1; Y <= box && Y < bound; ++Y) {
    if (!ys.count(Y % st.mod_y)) continue;
    if (auto X = solve_for_x(eq, Y); X && *X < bound) {
      if (!in_state(*X, Y)) throw InconsistencyError("sieve lost a solution of " + eq.str());
      found.insert({*X, Y});
    }
  }
}

CertificateKind open_kind(const std::set<ExponentPair>& found) {
  return found.empty() ? CertificateKind::Inconclusive : CertificateKind::Candidates;
}

// Tracks, per table entry, how many prime-power components of its orders
// still fail to divide the moduli; entries reaching zero on both sides are free.
struct FreeTracker {
  const OrderTable& table;
  std::vector<std::uint8_t> missing[2];
  std::vector<std::pair<u64, unsigned>> exps[2];
  std::vector<std::uint32_t> ready;

  explicit FreeTracker(const OrderTable& t) : table(t) {
    const std::size_t n = t.entries().size();
    for (int side = 0; side < 2; ++side) {
      missing[side].resize(n);
      for (std::size_t i = 0; i < n; ++i) missing[side][i] = static_cast<std::uint8_t>(t.component_count(side, i));
    }
    for (std::size_t i = 0; i < n; ++i)
      if (!missing[0][i] && !missing[1][i]) ready.push_back(static_cast<std::uint32_t>(i));
  }

  void raise(int side, u64 factor) {
    if (factor <= 1) return;
    for (auto [p, k] : factor_u64(factor)) {
      auto it = std::find_if(exps[side].begin(), exps[side].end(), [p = p](const auto& pe) { return pe.first == p; });
      if (it == exps[side].end()) it = exps[side].insert(exps[side].end(), {p, 0});
      for (unsigned e = it->second + 1; e <= it->second + k; ++e) {
        for (std::uint32_t i : table.with_component(side, p, e))
          if (--missing[side][i] == 0 && missing[1 - side][i] == 0) ready.push_back(i);
      }
      it->second += k;
    }
  }
};

u64 pow_small(u64 base, u64 e, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (e) {
    if (e & 1) result = result * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return result;
}

// A growth-free refinement: drop classes failing the equation mod q^k.
bool filter_in_place(SieveState& st, const PairEquation& eq, const PrimeInfo& prime) {
  const u64 M = prime.modulus;
  const u64 am = mod_of(eq.a, M), bm = mod_of(eq.b, M);
  const u64 ra0 = mod_of(eq.r, M) * pow_small(am, eq.x0, M) % M;
  const u64 sb0 = mod_of(eq.s, M) * pow_small(bm, eq.y0, M) % M;
  const u64 eps_a = eq.m ? M - 1 : 1 % M;
  const u64 eps_b = eq.n ? M - 1 : 1 % M;
  const std::size_t before = st.residues.size();
  std::erase_if(st.residues, [&](const ResidueClass& c) {
    const u64 l = ra0 * ((pow_small(am, c.x % prime.ord_a, M) + eps_a) % M) % M;
    const u64 r = sb0 * ((pow_small(bm, c.y % prime.ord_b, M) + eps_b) % M) % M;
    return l != r;
  });
  if (st.residues.size() == before) return false;
  st.primes.push_back(prime);
  return true;
}

SieveCertificate run_sieve(const PairEquation& eq, SieveState st, u64 bound, const SieveBudget& budget) {
  SieveCertificate cert;
  cert.eq = eq;
  cert.bound = bound;
  cert.box = budget.box;
  std::set<ExponentPair> found;

  auto finish = [&](CertificateKind kind) {
    cert.kind = kind;
    cert.solutions.assign(found.begin(), found.end());
    cert.state = std::move(st);
    if (kind == CertificateKind::Empty && !cert.solutions.empty())
      throw InconsistencyError("sieve emptied a class holding a verified solution of " + eq.str());
    return cert;
  };

  PruneResult pr = prune(st, eq, bound, found);
  if (st.residues.empty()) return finish(CertificateKind::Empty);
  box_search(eq, st, bound, budget.box, found);
  pr = prune(st, eq, bound, found);

  const auto table = OrderTable::get(eq.a, eq.b, budget.max_primes);
  const auto& entries = table->entries();
  std::vector<char> used(entries.size(), 0);
  FreeTracker tracker(*table);
  tracker.raise(0, st.mod_x);
  tracker.raise(1, st.mod_y);

  auto terminal = [&]() -> std::optional<CertificateKind> {
    if (st.residues.empty()) return CertificateKind::Empty;
    if (pr.all_matched) return CertificateKind::BoundExceeded;
    return std::nullopt;
  };

  for (;;) {
    if (auto k = terminal()) return finish(*k);

    // Entries whose orders divide both moduli filter without lifting.
    std::vector<std::uint32_t> ready;
    ready.swap(tracker.ready);
    std::sort(ready.begin(), ready.end());
    for (std::uint32_t i : ready) {
      if (used[i]) continue;
      used[i] = 1;
      if (filter_in_place(st, eq, entries[i])) {
        pr = prune(st, eq, bound, found);
        if (terminal()) break;
      }
    }
    if (auto k = terminal()) return finish(*k);

    // Growth: prefer lifting one modulus at a time, by the smallest factor.
    std::size_t best = entries.size();
    u128 best_f = 0;
    bool best_two_sided = true;
    std::size_t examined = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (used[i]) continue;
      // Small moduli carry small orders; look further only if none is usable.
      if (++examined > kGrowthWindow && best != entries.size()) break;
      const auto& e = entries[i];
      const u64 fx = e.ord_a / gcd_u64(st.mod_x, e.ord_a);
      const u64 fy = e.ord_b / gcd_u64(st.mod_y, e.ord_b);
      const u128 f = static_cast<u128>(fx) * fy;
      if (f <= 1) continue;
      if (static_cast<u128>(st.mod_x) * fx > budget.max_modulus || static_cast<u128>(st.mod_y) * fy > budget.max_modulus)
        continue;
      if (f * st.residues.size() > budget.max_residues) continue;
      const bool two_sided = fx > 1 && fy > 1;
      if (best == entries.size() || (best_two_sided && !two_sided) ||
          (best_two_sided == two_sided && f < best_f)) {
        best = i;
        best_f = f;
        best_two_sided = two_sided;
        if (!two_sided && f == 2) break;
      }
    }
    if (best == entries.size()) return finish(open_kind(found));
    used[best] = 1;
    const u64 old_x = st.mod_x, old_y = st.mod_y;
    st = refine_step(st, eq, entries[best]);
    tracker.raise(0, st.mod_x / old_x);
    tracker.raise(1, st.mod_y / old_y);
    pr = prune(st, eq, bound, found);
  }
}

}  // namespace

double SieveState::density() const {
  return static_cast<double>(residues.size()) / (static_cast<double>(mod_x) * static_cast<double>(mod_y));
}

ExponentClasses exponent_classes(const Int& g, const Int& coeff, const Int& other, unsigned long e0,
                                 unsigned sign_bit) {
  ExponentClasses out;
  const Factorization cf = factorize(coeff);
  const Factorization of = factorize(other);
  const Int N = coeff * ipow(other, e0);
  if (!coprime(g, N * other)) throw std::invalid_argument("exponent_classes: base shares a factor with modulus");
  const Factorization nf = merge(cf, of, e0);
  const Int O = order_mod(g, N, nf);
  auto start = coset_start(g, N, O, sign_bit);
  if (!start) return out;
  out.least_candidate = *start > 0 ? *start : O;

  Int L = O;
  std::vector<std::pair<Int, Int>> exclusions;  // (modulus, residue)
  for (const auto& pe : of.factors) {
    const Int Np = N * pe.first;
    const Factorization npf = merge(nf, Factorization{{{pe.first, 1}}}, 1);
    const Int Op = order_mod(g, Np, npf);
    if (auto sp = coset_start(g, Np, Op, sign_bit)) exclusions.emplace_back(Op, *sp);
    mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), Op.get_mpz_t());
  }
  if (mpz_sizeinbase(L.get_mpz_t(), 2) > 64) throw std::overflow_error("exponent_classes: modulus exceeds 64 bits");
  out.modulus = to_u64(L);
  const u64 o = to_u64(O);
  const u64 s0 = to_u64(*start);
  std::vector<std::pair<u64, u64>> ex;
  for (auto& [m, r] : exclusions) ex.emplace_back(to_u64(m), to_u64(r));
  for (u64 k = 0, count = out.modulus / o; k < count; ++k) {
    const u64 e = s0 + k * o;
    bool excluded = false;
    for (auto [m, r] : ex) {
      if (e % m == r) {
        excluded = true;
        break;
      }
    }
    if (!excluded) out.residues.push_back(e);
  }
  return out;
}

OrderTable::OrderTable(const Int& a, const Int& b, std::size_t max_entries) {
  const auto primes = primes_up_to(kTableLimit);
  for (u64 q : primes) {
    if (mpz_divisible_ui_p(a.get_mpz_t(), q) || mpz_divisible_ui_p(b.get_mpz_t(), q)) continue;
    // Factor q - 1 by trial division over the prime list.
    std::vector<u64> phi_primes;
    u64 rest = q - 1;
    for (u64 p : primes) {
      if (p * p > rest) break;
      if (rest % p == 0) {
        phi_primes.push_back(p);
        while (rest % p == 0) rest /= p;
      }
    }
    if (rest > 1) phi_primes.push_back(rest);
    std::vector<u64> with_q = phi_primes;
    with_q.push_back(q);
    u64 modulus = q;
    for (unsigned k = 1; modulus <= kTableLimit; ++k) {
      const u64 phi = modulus / q * (q - 1);
      const auto& ps = k == 1 ? phi_primes : with_q;
      PrimeInfo info;
      info.q = q;
      info.k = k;
      info.modulus = modulus;
      info.ord_a = mult_order_u64(mod_of(a, modulus), modulus, phi, ps);
      info.ord_b = mult_order_u64(mod_of(b, modulus), modulus, phi, ps);
      entries_.push_back(info);
      if (modulus > kTableLimit / q) break;
      modulus *= q;
    }
  }
  std::stable_sort(entries_.begin(), entries_.end(),
                   [](const PrimeInfo& l, const PrimeInfo& r) { return l.modulus < r.modulus; });
  if (entries_.size() > max_entries) entries_.resize(max_entries);

  for (int side = 0; side < 2; ++side) {
    counts_[side].resize(entries_.size());
    for (std::size_t i = 0; i < entries_.size(); ++i) {
      u64 rest = side == 0 ? entries_[i].ord_a : entries_[i].ord_b;
      unsigned count = 0;
      for (u64 p : primes) {
        if (p * p > rest) break;
        if (rest % p) continue;
        unsigned e = 0;
        while (rest % p == 0) {
          rest /= p;
          ++e;
        }
        index_[side][{p, e}].push_back(static_cast<std::uint32_t>(i));
        ++count;
      }
      if (rest > 1) {
        index_[side][{rest, 1}].push_back(static_cast<std::uint32_t>(i));
        ++count;
      }
      counts_[side][i] = static_cast<std::uint8_t>(count);
    }
  }
}

const std::vector<std::uint32_t>& OrderTable::with_component(int side, u64 p, unsigned e) const {
  static const std::vector<std::uint32_t> none;
  auto it = index_[side].find({p, e});
  return it == index_[side].end() ? none : it->second;
}

std::shared_ptr<const OrderTable> OrderTable::get(const Int& a, const Int& b, std::size_t max_entries) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const OrderTable>> cache;
  const std::string key = a.get_str() + ',' + b.get_str() + ',' + std::to_string(max_entries);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::make_shared<const OrderTable>(a, b, max_entries);
  cache.emplace(key, table);
  return table;
}

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::Empty: return "Empty";
    case CertificateKind::BoundExceeded: return "BoundExceeded";
    case CertificateKind::Candidates: return "Candidates";
    case CertificateKind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

CertificateKind certificate_kind_from_string(const std::string& s) {
  if (s == "Empty") return CertificateKind::Empty;
  if (s == "BoundExceeded") return CertificateKind::BoundExceeded;
  if (s == "Candidates") return CertificateKind::Candidates;
  if (s == "Inconclusive") return CertificateKind::Inconclusive;
  throw std::invalid_argument("unknown certificate kind '" + s + "'");
}

SieveState initial_state(const PairEquation& eq) {
  require_coprime(eq.r, eq.a, eq.s, eq.b);
  return state_from_classes(exponent_classes(eq.a, eq.s, eq.b, eq.y0, eq.m),
                            exponent_classes(eq.b, eq.r, eq.a, eq.x0, eq.n));
}

SieveState refine_step(const SieveState& state, const PairEquation& eq, const PrimeInfo& prime) {
  const u64 M = prime.modulus;
  if (mod_of(eq.a, prime.q) == 0 || mod_of(eq.b, prime.q) == 0)
    throw std::invalid_argument("refine_step: auxiliary prime divides ab");
  if (prime.ord_a == 0 || prime.ord_b == 0) throw std::invalid_argument("refine_step: zero order");
  const u64 new_x = lcm_checked(state.mod_x, prime.ord_a);
  const u64 new_y = lcm_checked(state.mod_y, prime.ord_b);
  if (new_x == 0 || new_y == 0) throw std::overflow_error("refine_step: modulus exceeds 64 bits");
  const u64 fx = new_x / state.mod_x;
  const u64 fy = new_y / state.mod_y;

  const bool small = M < (u64{1} << 32);
  auto mul = [&](u64 x, u64 y) { return small ? x * y % M : mulmod(x, y, M); };
  auto pw = [&](u64 x, u64 e) { return small ? pow_small(x, e, M) : powmod(x, e, M); };
  const u64 am = mod_of(eq.a, M), bm = mod_of(eq.b, M);
  const u64 ra0 = mul(mod_of(eq.r, M), pw(am, eq.x0));
  const u64 sb0 = mul(mod_of(eq.s, M), pw(bm, eq.y0));
  const u64 eps_a = eq.m ? M - 1 : 1 % M;
  const u64 eps_b = eq.n ? M - 1 : 1 % M;

  SieveState out;
  out.mod_x = new_x;
  out.mod_y = new_y;
  out.primes = state.primes;
  out.primes.push_back(prime);

  std::vector<u64> lhs(fx), rhs(fy);
  std::unordered_multimap<u64, u64> rhs_index;
  for (const auto& cls : state.residues) {
    for (u64 i = 0; i < fx; ++i)
      lhs[i] = mul(ra0, (pw(am, (cls.x + i * state.mod_x) % prime.ord_a) + eps_a) % M);
    for (u64 j = 0; j < fy; ++j)
      rhs[j] = mul(sb0, (pw(bm, (cls.y + j * state.mod_y) % prime.ord_b) + eps_b) % M);
    if (fx * fy <= 4096) {
      for (u64 i = 0; i < fx; ++i)
        for (u64 j = 0; j < fy; ++j)
          if (lhs[i] == rhs[j]) out.residues.push_back({cls.x + i * state.mod_x, cls.y + j * state.mod_y});
    } else {
      rhs_index.clear();
      for (u64 j = 0; j < fy; ++j) rhs_index.emplace(rhs[j], j);
      for (u64 i = 0; i < fx; ++i) {
        auto [lo, hi] = rhs_index.equal_range(lhs[i]);
        for (auto it = lo; it != hi; ++it)
          out.residues.push_back({cls.x + i * state.mod_x, cls.y + it->second * state.mod_y});
      }
    }
  }
  std::sort(out.residues.begin(), out.residues.end());
  return out;
}

std::optional<u64> solve_for_y(const PairEquation& eq, u64 X) {
  const Int L = eq.lhs(X);
  const Int D = eq.s * ipow(eq.b, eq.y0);
  if (L <= 0 || !mpz_divisible_p(L.get_mpz_t(), D.get_mpz_t())) return std::nullopt;
  Int t = L / D;
  t += eq.n ? 1 : -1;
  const long Y = exact_log(t, eq.b);
  if (Y < 1) return std::nullopt;
  return static_cast<u64>(Y);
}

std::optional<u64> solve_for_x(const PairEquation& eq, u64 Y) {
  const Int R = eq.rhs(Y);
  const Int D = eq.r * ipow(eq.a, eq.x0);
  if (R <= 0 || !mpz_divisible_p(R.get_mpz_t(), D.get_mpz_t())) return std::nullopt;
  Int t = R / D;
  t += eq.m ? 1 : -1;
  const long X = exact_log(t, eq.a);
  if (X < 1) return std::nullopt;
  return static_cast<u64>(X);
}

SieveCertificate sieve_pair(const PairEquation& eq, u64 bound, const SieveBudget& budget) {
  if (bound < 1) throw std::invalid_argument("sieve_pair: bound must be >= 1");
  return run_sieve(eq, initial_state(eq), bound, budget);
}

ReplayResult replay_certificate(const SieveCertificate& cert) {
  const PairEquation& eq = cert.eq;
  for (const auto& p : cert.state.primes) {
    if (!is_prime_u64(p.q)) throw std::invalid_argument("replay: recorded modulus base " + std::to_string(p.q) + " is not prime");
    u64 pk = 1;
    for (unsigned i = 0; i < p.k; ++i) pk *= p.q;
    if (p.k == 0 || pk != p.modulus) throw std::invalid_argument("replay: modulus is not q^k");
    if (mod_of(eq.a, p.q) == 0 || mod_of(eq.b, p.q) == 0)
      throw std::invalid_argument("replay: recorded prime " + std::to_string(p.q) + " divides ab");
    if (p.ord_a == 0 || p.ord_b == 0 || powmod(mod_of(eq.a, p.modulus), p.ord_a, p.modulus) != 1 ||
        powmod(mod_of(eq.b, p.modulus), p.ord_b, p.modulus) != 1)
      throw std::invalid_argument("replay: recorded order is not a period");
  }

  SieveState st = initial_state(eq);
  std::set<ExponentPair> found;
  PruneResult pr = prune(st, eq, cert.bound, found);
  if (!st.residues.empty()) {
    box_search(eq, st, cert.bound, cert.box, found);
    pr = prune(st, eq, cert.bound, found);
  }
  for (const auto& p : cert.state.primes) {
    st = refine_step(st, eq, p);
    pr = prune(st, eq, cert.bound, found);
  }

  CertificateKind kind;
  if (st.residues.empty())
    kind = CertificateKind::Empty;
  else if (pr.all_matched)
    kind = CertificateKind::BoundExceeded;
  else
    kind = open_kind(found);

  ReplayResult res;
  std::vector<ExponentPair> sols(found.begin(), found.end());
  if (st.mod_x != cert.state.mod_x || st.mod_y != cert.state.mod_y) {
    res.detail = "moduli differ";
  } else if (st.residues != cert.state.residues) {
    res.detail = "surviving residues differ";
  } else if (sols != cert.solutions) {
    res.detail = "solution list differs";
  } else if (kind != cert.kind) {
    res.detail = "conclusion differs: replay gives " + to_string(kind);
  } else {
    res.match = true;
    res.detail = to_string(kind);
  }
  return res;
}

BaseExponentCaps bound_base_exponents(const Int& r, const Int& a, const Int& s, const Int& b, unsigned m, unsigned n,
                                      u64 bound, unsigned long max_exponent) {
  require_coprime(r, a, s, b);
  BaseExponentCaps caps;
  auto scan = [&](const Int& g, const Int& coeff, const Int& other, unsigned sign_bit, Int& witness) -> unsigned long {
    // The admissible set shrinks as e0 grows, so its least element is
    // non-decreasing; stop at the first e0 where it is empty or past the bound.
    for (unsigned long e0 = 0; e0 <= max_exponent; ++e0) {
      const Int least = exponent_classes(g, coeff, other, e0, sign_bit).least_candidate;
      if (least == 0 || least >= Int(std::to_string(bound))) {
        witness = least;
        return e0;  // first inadmissible base exponent
      }
    }
    throw InconclusiveError("bound_base_exponents: no cap below max_exponent");
  };
  // k_y bounds y0 through the X-side condition s b^{y0} | a^X +- 1, and vice versa.
  const unsigned long first_bad_y = scan(a, s, b, m, caps.witness_x);
  const unsigned long first_bad_x = scan(b, r, a, n, caps.witness_y);
  caps.k_y = first_bad_y;
  caps.k_x = first_bad_x;
  // Stored as "first inadmissible"; callers loop while e0 < cap.
  return caps;
}

std::vector<PairRealisation> realise_pair(const PairRelation& rel) {
  std::vector<PairRealisation> out;
  const auto& eq = rel.eq;
  PillaiInstance probe(eq.a, eq.b, 1, eq.r, eq.s);
  const unsigned long x1 = eq.x0, x2 = eq.x0 + rel.X;
  std::vector<std::pair<unsigned long, unsigned long>> ys = {{eq.y0, eq.y0 + rel.Y}};
  if (rel.Y != 0) ys.emplace_back(eq.y0 + rel.Y, eq.y0);
  for (auto [ya, yb] : ys) {
    for (unsigned mask = 0; mask < 16; ++mask) {
      SignedSolution s1{x1, ya, mask & 1u, (mask >> 1) & 1u};
      SignedSolution s2{x2, yb, (mask >> 2) & 1u, (mask >> 3) & 1u};
      if (s1 == s2) continue;
      const Int c1 = evaluate(probe, s1);
      if (c1 <= 0 || c1 != evaluate(probe, s2)) continue;
      if (s2 < s1) std::swap(s1, s2);
      out.push_back({c1, s1, s2});
    }
  }
  return out;
}

AtMostTwoReport verify_at_most_two(const Int& r, const Int& a, const Int& s, const Int& b, u64 bound,
                                   const SieveBudget& budget, unsigned min_base_exponent) {
  require_coprime(r, a, s, b);
  AtMostTwoReport rep;
  rep.r = r;
  rep.a = a;
  rep.s = s;
  rep.b = b;

  for (unsigned m : {0u, 1u}) {
    for (unsigned n : {0u, 1u}) {
      BaseExponentCaps caps;
      try {
        caps = bound_base_exponents(r, a, s, b, m, n, bound);
      } catch (const InconclusiveError& e) {
        rep.inconclusive.push_back("caps m=" + std::to_string(m) + " n=" + std::to_string(n));
        continue;
      }
      rep.caps[{m, n}] = caps;
      std::vector<ExponentClasses> ex, ey;
      for (unsigned long y0 = 0; y0 < caps.k_y; ++y0)
        ex.push_back(y0 >= min_base_exponent ? exponent_classes(a, s, b, y0, m) : ExponentClasses{});
      for (unsigned long x0 = 0; x0 < caps.k_x; ++x0)
        ey.push_back(x0 >= min_base_exponent ? exponent_classes(b, r, a, x0, n) : ExponentClasses{});
      for (unsigned long x0 = min_base_exponent; x0 < caps.k_x; ++x0) {
        if (ey[x0].residues.empty()) continue;
        for (unsigned long y0 = min_base_exponent; y0 < caps.k_y; ++y0) {
          if (ex[y0].residues.empty()) continue;
          PairEquation eq{r, a, s, b, x0, y0, m, n};
          ++rep.subproblems;
          SieveCertificate cert = run_sieve(eq, state_from_classes(ex[y0], ey[x0]), bound, budget);
          if (cert.kind == CertificateKind::Empty) continue;
          if (cert.kind != CertificateKind::BoundExceeded) rep.inconclusive.push_back(eq.str());
          for (const auto& sol : cert.solutions) rep.quadruples.push_back({eq, sol.X, sol.Y});
          rep.certificates.push_back(std::move(cert));
        }
      }
    }
  }

  std::map<Int, std::set<SignedSolution>> by_c;
  std::map<Int, std::set<std::pair<SignedSolution, SignedSolution>>> pairs_by_c;
  for (const auto& rel : rep.quadruples) {
    for (const auto& real : realise_pair(rel)) {
      by_c[real.c].insert(real.first);
      by_c[real.c].insert(real.second);
      pairs_by_c[real.c].insert({real.first, real.second});
    }
  }
  for (const auto& [c, pairs] : pairs_by_c)
    if (pairs.size() >= 2) rep.duplicate_c.push_back(c);
  for (const auto& [c, sols] : by_c) {
    if (sols.size() >= 3)
      rep.exceptional.emplace_back(PillaiInstance(a, b, c, r, s), std::vector<SignedSolution>(sols.begin(), sols.end()));
  }
  return rep;
}

}  // namespace pillai
