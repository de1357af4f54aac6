#include "pillai/search.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <numeric>
#include <thread>

namespace pillai {

namespace {

bool coprime_ul(unsigned long x, unsigned long y) { return std::gcd(x, y) == 1; }

Int big(unsigned long v) { return Int(v); }

// r a^x for x = lo..cap, or empty if any term exceeds 2^120.
std::vector<u128> scaled_powers(unsigned long coeff, unsigned long base, unsigned lo, unsigned long cap) {
  std::vector<u128> out;
  const u128 limit = static_cast<u128>(1) << 120;
  u128 v = coeff;
  for (unsigned long e = 0; e < lo; ++e) v *= base;
  for (unsigned long e = lo; e <= cap; ++e) {
    if (v > limit) return {};
    out.push_back(v);
    v *= base;
  }
  return out;
}

}  // namespace

void SearchRange::validate() const {
  if (a_min < 3 || a_max < a_min) throw std::invalid_argument("search range: need 3 <= a_min <= a_max");
  if (r_max < 1 || s_max < 1) throw std::invalid_argument("search range: need r_max, s_max >= 1");
  if (pair_cap < 1 || third_cap < pair_cap) throw std::invalid_argument("search range: need 1 <= pair_cap <= third_cap");
}

std::string Tuple::str() const {
  return std::to_string(r) + ',' + std::to_string(a) + ',' + std::to_string(s) + ',' + std::to_string(b);
}

std::string Shard::str() const { return std::to_string(a) + ',' + std::to_string(b); }

std::vector<Tuple> range_tuples(const SearchRange& range) {
  range.validate();
  const auto& f = range.filters;
  std::vector<Tuple> out;
  for (unsigned long a = range.a_min; a <= range.a_max; ++a) {
    if (f.exclude_perfect_powers && is_perfect_power(big(a))) continue;
    for (unsigned long b = 2; b < a; ++b) {
      if (f.exclude_perfect_powers && is_perfect_power(big(b))) continue;
      for (unsigned long r = 1; r <= range.r_max; ++r) {
        if (f.exclude_a_divides_r && r % a == 0) continue;
        for (unsigned long s = 1; s <= range.s_max; ++s) {
          if (f.exclude_b_divides_s && s % b == 0) continue;
          if (f.require_coprime && !coprime_ul(r * a, s * b)) continue;
          out.push_back({r, a, s, b});
        }
      }
    }
  }
  return out;
}

std::vector<Shard> range_shards(const SearchRange& range) {
  std::vector<Shard> out;
  for (const auto& t : range_tuples(range))
    if (out.empty() || out.back().a != t.a || out.back().b != t.b) out.push_back({t.a, t.b});
  return out;
}

SearchRange wide_defaults(unsigned long a_max, unsigned long rs_max) {
  SearchRange r;
  r.a_max = a_max;
  r.r_max = rs_max;
  r.s_max = rs_max;
  r.pair_cap = 12;
  r.third_cap = 24;
  r.filters = {true, true, true, true};
  return r;
}

std::vector<SolutionSet> wide_search(const SearchRange& range) {
  std::vector<SolutionSet> out;
  std::vector<u128> values;
  for (const Tuple& t : range_tuples(range)) {
    const auto R = scaled_powers(t.r, t.a, range.min_exponent, range.pair_cap);
    const auto S = scaled_powers(t.s, t.b, range.min_exponent, range.pair_cap);
    std::vector<Int> repeated;
    if (R.empty() || S.empty()) {
      // Too large for the fast path: collect with big integers.
      std::map<Int, int> count;
      const PillaiInstance probe(big(t.a), big(t.b), 1, big(t.r), big(t.s));
      for (unsigned long x = range.min_exponent; x <= range.pair_cap; ++x) {
        const Int rv = probe.r * ipow(probe.a, x);
        for (unsigned long y = range.min_exponent; y <= range.pair_cap; ++y) {
          const Int sv = probe.s * ipow(probe.b, y);
          ++count[rv + sv];
          if (rv != sv) ++count[rv > sv ? Int(rv - sv) : Int(sv - rv)];
        }
      }
      for (const auto& [c, k] : count)
        if (k >= 2) repeated.push_back(c);
    } else {
      values.clear();
      for (u128 rv : R) {
        for (u128 sv : S) {
          values.push_back(rv + sv);
          if (rv != sv) values.push_back(rv > sv ? rv - sv : sv - rv);
        }
      }
      std::sort(values.begin(), values.end());
      for (std::size_t i = 1; i < values.size(); ++i) {
        if (values[i] != values[i - 1] || (i >= 2 && values[i - 2] == values[i])) continue;
        const u64 hi = static_cast<u64>(values[i] >> 64), lo = static_cast<u64>(values[i]);
        repeated.push_back((big(hi) << 64) + big(lo));
      }
    }
    for (const Int& c : repeated) {
      const PillaiInstance inst(big(t.a), big(t.b), c, big(t.r), big(t.s));
      SolutionSet sols = enumerate_solutions(
          inst, EnumerationBounds{range.third_cap, range.third_cap, range.min_exponent, SignMode::all});
      if (sols.size() >= 3) out.push_back(std::move(sols));
    }
  }
  std::sort(out.begin(), out.end(), [](const SolutionSet& l, const SolutionSet& r) {
    const auto& a = l.instance();
    const auto& b = r.instance();
    return std::tie(a.a, a.b, a.r, a.s, a.c) < std::tie(b.a, b.b, b.r, b.s, b.c);
  });
  return out;
}

TupleResult corollary_tuple(const Tuple& t, u64 bound, const SieveBudget& budget) {
  TupleResult res;
  res.tuple = t;
  const Int r = big(t.r), a = big(t.a), s = big(t.s), b = big(t.b);
  AtMostTwoReport rep = verify_at_most_two(r, a, s, b, bound, budget, 1);
  res.subproblems = rep.subproblems;
  res.residual = std::move(rep.inconclusive);
  res.certificates = std::move(rep.certificates);

  // Every c realised by a sieved pair, with the largest exponent seen for it.
  // A solution sharing x with one member and y with another is never part of
  // a sieved pair, but its exponents are bounded by theirs.
  std::map<Int, unsigned long> realised;
  for (const auto& rel : rep.quadruples) {
    for (const auto& real : realise_pair(rel)) {
      auto& e = realised[real.c];
      e = std::max({e, real.first.x, real.first.y, real.second.x, real.second.y});
    }
  }
  std::set<Int> confirmed;
  for (const auto& [c, max_e] : realised) {
    const PillaiInstance inst(a, b, c, r, s);
    const unsigned long box = std::max<unsigned long>(24, max_e + 1);
    SolutionSet oracle = enumerate_solutions(inst, EnumerationBounds{box, box, 1, SignMode::all});
    if (oracle.size() < 3) continue;
    confirmed.insert(c);
    res.exceptional.push_back(std::move(oracle));
  }
  for (const auto& e : rep.exceptional) {
    if (!confirmed.count(e.instance().c))
      throw InconsistencyError("corollary_tuple: sieve reports three solutions the oracle does not find for " +
                               e.instance().str());
  }
  return res;
}

std::vector<SolutionSet> CorollaryResult::exceptional() const {
  std::vector<SolutionSet> out;
  for (const auto& t : tuples)
    for (const auto& e : t.exceptional) out.push_back(e);
  std::sort(out.begin(), out.end(), [](const SolutionSet& l, const SolutionSet& r) {
    const auto& a = l.instance();
    const auto& b = r.instance();
    return std::tie(a.a, a.b, a.r, a.s, a.c) < std::tie(b.a, b.b, b.r, b.s, b.c);
  });
  return out;
}

std::vector<std::string> CorollaryResult::residual() const {
  std::vector<std::string> out;
  for (const auto& t : tuples)
    for (const auto& r : t.residual) out.push_back(r);
  return out;
}

CorollaryResult corollary_search(const SearchRange& range, const CorollaryOptions& options) {
  const std::vector<Tuple> all = range_tuples(range);
  std::vector<Tuple> work;
  std::map<Shard, std::size_t> remaining;
  std::vector<Shard> order;
  for (const auto& t : all) {
    const Shard sh{t.a, t.b};
    if (options.skip_shards.count(sh)) continue;
    work.push_back(t);
    if (remaining[sh]++ == 0) order.push_back(sh);
  }

  std::vector<std::optional<TupleResult>> results(work.size());
  std::atomic<std::size_t> next{0};
  std::atomic<bool> stop{false};
  std::mutex mu;
  std::exception_ptr error;
  std::vector<Shard> completed;

  auto finish_shard = [&](const Shard& sh) {
    // Caller holds mu.
    if (stop) return;
    std::vector<TupleResult> shard_results;
    for (std::size_t i = 0; i < work.size(); ++i)
      if (work[i].a == sh.a && work[i].b == sh.b) shard_results.push_back(*results[i]);
    if (options.on_shard) options.on_shard(sh, shard_results);
    completed.push_back(sh);
    if (options.max_shards && completed.size() >= options.max_shards) stop = true;
  };

  auto worker = [&] {
    for (;;) {
      if (stop) return;
      const std::size_t i = next.fetch_add(1);
      if (i >= work.size()) return;
      try {
        TupleResult tr = corollary_tuple(work[i], options.bound, options.budget);
        std::lock_guard<std::mutex> lock(mu);
        results[i] = std::move(tr);
        const Shard sh{work[i].a, work[i].b};
        if (--remaining[sh] == 0) finish_shard(sh);
      } catch (...) {
        std::lock_guard<std::mutex> lock(mu);
        if (!error) error = std::current_exception();
        stop = true;
        return;
      }
    }
  };

  const unsigned n = std::max(1u, options.threads);
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < n; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);

  CorollaryResult out;
  std::sort(completed.begin(), completed.end());
  out.completed = completed;
  const std::set<Shard> done(completed.begin(), completed.end());
  for (std::size_t i = 0; i < work.size(); ++i)
    if (done.count({work[i].a, work[i].b})) out.tuples.push_back(*results[i]);
  out.interrupted = done.size() < order.size();
  return out;
}

}  // namespace pillai
