#include "cli.hpp"

#include "records.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

namespace pillai::cli {

namespace {

struct Common {
  std::string out_path;
  bool timestamp = false;
};

Json make_meta(const std::string& command, const Common& common, Json extra = Json::object()) {
  Json meta{{"tool", "pillai"}, {"version", kToolVersion}, {"schema", kSchemaVersion}, {"command", command}};
  for (auto it = extra.begin(); it != extra.end(); ++it) meta[it.key()] = it.value();
  if (common.timestamp) {
    const auto now = std::chrono::system_clock::now().time_since_epoch();
    meta["timestamp"] = std::to_string(std::chrono::duration_cast<std::chrono::seconds>(now).count());
  }
  return meta;
}

class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty() && path != "-") {
      file_.open(path);
      if (!file_) throw std::runtime_error("cannot open output file " + path);
      out_ = &file_;
    }
  }
  void write(const Json& record) { *out_ << record.dump() << '\n'; }
  void flush() { out_->flush(); }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

InstanceFlags full_flags(const SolutionSet& set, ReducibilityMode mode) {
  InstanceFlags f = classify_instance(set.instance());
  f.reducible = classify_reducible(set, mode);
  return f;
}

void write_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write checkpoint " + tmp);
    f << text;
  }
  std::filesystem::rename(tmp, path);
}

Json range_json(const SearchRange& r, u64 bound) {
  return Json{{"a_min", int_json(r.a_min)},
              {"a_max", int_json(r.a_max)},
              {"r_max", int_json(r.r_max)},
              {"s_max", int_json(r.s_max)},
              {"bound", int_json(bound)},
              {"require_coprime", r.filters.require_coprime},
              {"exclude_a_divides_r", r.filters.exclude_a_divides_r},
              {"exclude_b_divides_s", r.filters.exclude_b_divides_s},
              {"exclude_perfect_powers", r.filters.exclude_perfect_powers}};
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out(1);
  for (char ch : s) {
    if (ch == sep)
      out.emplace_back();
    else if (ch != ' ')
      out.back().push_back(ch);
  }
  return out;
}

Tuple parse_tuple(const std::string& s) {
  const auto parts = split(s, ',');
  if (parts.size() != 4) throw std::invalid_argument("tuple must be 'r,a,s,b'");
  unsigned long v[4];
  for (int i = 0; i < 4; ++i) {
    const u64 x = parse_count(parts[i]);
    v[i] = x;
  }
  if (v[0] < 1 || v[2] < 1 || v[1] < 2 || v[3] < 2) throw std::invalid_argument("tuple needs r, s > 0 and a, b > 1");
  return {v[0], v[1], v[2], v[3]};
}

}  // namespace

u64 parse_count(const std::string& text) {
  std::string s = text;
  if (s.empty()) throw std::invalid_argument("empty number");
  std::string mant = s, ex;
  const auto epos = s.find_first_of("eE");
  if (epos != std::string::npos) {
    mant = s.substr(0, epos);
    ex = s.substr(epos + 1);
    if (ex.empty()) throw std::invalid_argument("malformed number '" + text + "'");
  }
  std::string digits;
  long shift = 0;
  bool dot = false;
  for (char c : mant) {
    if (c == '.') {
      if (dot) throw std::invalid_argument("malformed number '" + text + "'");
      dot = true;
    } else if (c >= '0' && c <= '9') {
      digits.push_back(c);
      if (dot) --shift;
    } else {
      throw std::invalid_argument("malformed number '" + text + "'");
    }
  }
  if (digits.empty()) throw std::invalid_argument("malformed number '" + text + "'");
  if (!ex.empty()) {
    Int e;
    if (e.set_str(ex[0] == '+' ? ex.substr(1) : ex, 10) != 0 || !e.fits_slong_p() || abs(e) > 40)
      throw std::invalid_argument("malformed exponent in '" + text + "'");
    shift += e.get_si();
  }
  Int v(digits, 10);
  if (shift >= 0) {
    v *= ipow(Int(10), static_cast<unsigned long>(shift));
  } else {
    const Int d = ipow(Int(10), static_cast<unsigned long>(-shift));
    if (!mpz_divisible_p(v.get_mpz_t(), d.get_mpz_t())) throw std::invalid_argument("'" + text + "' is not an integer");
    v /= d;
  }
  if (mpz_sizeinbase(v.get_mpz_t(), 2) > 64) throw std::invalid_argument("'" + text + "' exceeds 64 bits");
  return to_u64(v);
}

unsigned resolve_threads(unsigned flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("PILLAI_THREADS")) {
    try {
      const u64 v = parse_count(env);
      if (v > 0 && v < 4096) return static_cast<unsigned>(v);
    } catch (const std::invalid_argument&) {
    }
    throw std::invalid_argument(std::string("PILLAI_THREADS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Solution counting and certified searches for (-1)^u r a^x + (-1)^v s b^y = c", "pillai"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--out", common.out_path, "Output file for JSON-lines records (default: stdout)");
  app.add_flag("--timestamp", common.timestamp, "Record a timestamp in meta");

  // enumerate
  auto* en = app.add_subcommand("enumerate", "Exhaustive solutions in an exponent box");
  std::string en_instance, en_signs = "all";
  unsigned long en_xmax = 10, en_ymax = 10;
  unsigned en_min = 1;
  en->add_option("--instance", en_instance, "a,b,c,r,s")->required();
  en->add_option("--xmax", en_xmax);
  en->add_option("--ymax", en_ymax);
  en->add_option("--min-exp", en_min);
  en->add_option("--signs", en_signs, "all | plus-minus")->check(CLI::IsMember({"all", "plus-minus"}));

  // sieve
  auto* sv = app.add_subcommand("sieve", "Bootstrapping sieve on one pair equation");
  std::string sv_eq, sv_bound = "8e14";
  std::size_t sv_primes = 5000;
  sv->add_option("--equation", sv_eq, "r,a,s,b,x0,y0,m,n")->required();
  sv->add_option("--bound", sv_bound);
  sv->add_option("--max-primes", sv_primes);

  // verify-pair
  auto* vp = app.add_subcommand("verify-pair", "All pair solutions and three-solution instances for one (r,a,s,b)");
  std::string vp_tuple, vp_bound = "8e14";
  vp->add_option("--tuple", vp_tuple, "r,a,s,b")->required();
  vp->add_option("--bound", vp_bound);

  // search-corollary
  auto* sc = app.add_subcommand("search-corollary", "Certified search over a range of (r,a,s,b)");
  unsigned long sc_amin = 3, sc_amax = 8, sc_rs = 10, sc_rmax = 0, sc_smax = 0;
  std::string sc_bound = "8e14", sc_checkpoint;
  unsigned sc_threads = 0;
  std::size_t sc_max_shards = 0;
  bool sc_certs = false, sc_permissive = false;
  sc->add_option("--a-min", sc_amin);
  sc->add_option("--a-max", sc_amax);
  sc->add_option("--rs-max", sc_rs, "Bound for both r and s");
  sc->add_option("--r-max", sc_rmax);
  sc->add_option("--s-max", sc_smax);
  sc->add_option("--bound", sc_bound);
  sc->add_option("--threads", sc_threads, "Workers (overrides PILLAI_THREADS)");
  sc->add_option("--checkpoint", sc_checkpoint, "Checkpoint file for resuming");
  sc->add_option("--max-shards", sc_max_shards, "Stop after this many (a,b) shards");
  sc->add_flag("--certificates", sc_certs, "Also emit every non-empty sub-certificate");
  sc->add_flag("--permissive", sc_permissive, "Emit inconclusive sub-certificates instead of failing");

  // search-wide
  auto* sw = app.add_subcommand("search-wide", "Small-exponent scan for three solutions");
  unsigned long sw_amin = 3, sw_amax = 30, sw_rs = 50, sw_pair = 12, sw_third = 24;
  bool sw_nofilter = false;
  sw->add_option("--a-min", sw_amin);
  sw->add_option("--a-max", sw_amax);
  sw->add_option("--rs-max", sw_rs);
  sw->add_option("--pair-cap", sw_pair);
  sw->add_option("--third-cap", sw_third);
  sw->add_flag("--no-filters", sw_nofilter, "Keep a|r, b|s and perfect powers (gcd(ra,sb)=1 still required)");

  // family-eq16
  auto* f16 = app.add_subcommand("family-eq16", "Instances with exactly two solutions");
  std::string f16_a, f16_b;
  unsigned long f16_x1 = 0, f16_y1 = 0;
  TwoSolutionLimits f16_lim;
  f16->add_option("--a", f16_a)->required();
  f16->add_option("--b", f16_b)->required();
  f16->add_option("--x1", f16_x1)->required();
  f16->add_option("--y1", f16_y1)->required();
  f16->add_option("--dx-max", f16_lim.dx_max);
  f16->add_option("--dy-max", f16_lim.dy_max);
  f16->add_option("--box", f16_lim.box);

  // family-eq20
  auto* f20 = app.add_subcommand("family-eq20", "Three-solution families with b = dA");
  unsigned long f20_A = 0, f20_Amin = 2, f20_Amax = 0, f20_m = 0, f20_mmin = 3, f20_mmax = 0;
  std::string f20_variant = "base";
  f20->add_option("--A", f20_A);
  f20->add_option("--A-min", f20_Amin);
  f20->add_option("--A-max", f20_Amax);
  f20->add_option("--m", f20_m);
  f20->add_option("--m-min", f20_mmin);
  f20->add_option("--m-max", f20_mmax);
  f20->add_option("--variant", f20_variant, "base | min-positive | both")
      ->check(CLI::IsMember({"base", "min-positive", "both"}));

  // goormaghtigh
  auto* go = app.add_subcommand("goormaghtigh", "Equal repunits (A^m-1)/(A-1) = (B^n-1)/(B-1)");
  GoormaghtighCaps go_caps;
  std::string go_value_cap;
  bool go_n2 = false;
  go->add_option("--A-max", go_caps.A_max);
  go->add_option("--B-max", go_caps.B_max);
  go->add_option("--m-max", go_caps.m_max);
  go->add_option("--n-max", go_caps.n_max);
  go->add_option("--value-cap", go_value_cap, "Largest common value (default 2^64)");
  go->add_flag("--include-n2", go_n2, "Also list solutions with n = 2");

  // bounds
  auto* bd = app.add_subcommand("bounds", "Three-logarithm constant and the global exponent bound");
  unsigned bd_degree = 1, bd_chi = 1;
  bd->add_option("--degree", bd_degree);
  bd->add_option("--chi", bd_chi)->check(CLI::IsMember({1, 2}));

  // replay-certificate
  auto* rc = app.add_subcommand("replay-certificate", "Re-derive certificates from their recorded primes");
  std::string rc_in = "-";
  rc->add_option("--in", rc_in, "JSON-lines file with certificate records (default: stdin)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kComplete : kError;
  }

  try {
    Sink sink(common.out_path, out);

    if (*en) {
      const PillaiInstance inst = PillaiInstance::parse(en_instance);
      const SolutionSet set = enumerate_solutions(
          inst, {en_xmax, en_ymax, en_min, en_signs == "all" ? SignMode::all : SignMode::plus_minus});
      const auto mode = en_min >= 1 ? ReducibilityMode::positive_only : ReducibilityMode::standard;
      InstanceFlags flags = classify_instance(inst);
      if (!set.empty()) flags.reducible = classify_reducible(set, mode);
      sink.write(solution_set_record(
          set, flags,
          make_meta("enumerate", common,
                    Json{{"box", Json{{"xmax", int_json(en_xmax)}, {"ymax", int_json(en_ymax)},
                                      {"min_exp", int_json(en_min)}, {"signs", en_signs}}}})));
      return kComplete;
    }

    if (*sv) {
      const PairEquation eq = PairEquation::parse(sv_eq);
      SieveBudget budget;
      budget.max_primes = sv_primes;
      const SieveCertificate cert = sieve_pair(eq, parse_count(sv_bound), budget);
      sink.write(certificate_record(cert, make_meta("sieve", common)));
      const bool closed = cert.kind == CertificateKind::Empty || cert.kind == CertificateKind::BoundExceeded;
      return closed ? kComplete : kInconclusive;
    }

    if (*vp) {
      const Tuple t = parse_tuple(vp_tuple);
      const TupleResult res = corollary_tuple(t, parse_count(vp_bound));
      const Json meta = make_meta("verify-pair", common, Json{{"tuple", t.str()}});
      for (const auto& e : res.exceptional)
        sink.write(solution_set_record(e, full_flags(e, ReducibilityMode::positive_only), meta));
      for (const auto& c : res.certificates) sink.write(certificate_record(c, meta));
      if (!res.residual.empty()) {
        err << "inconclusive sub-problems: " << res.residual.size() << '\n';
        return kInconclusive;
      }
      return kComplete;
    }

    if (*sc) {
      SearchRange range;
      range.a_min = sc_amin;
      range.a_max = sc_amax;
      range.r_max = sc_rmax ? sc_rmax : sc_rs;
      range.s_max = sc_smax ? sc_smax : sc_rs;
      range.filters = {true, false, false, false};
      range.validate();
      const u64 bound = parse_count(sc_bound);
      const Json rjson = range_json(range, bound);
      const Json meta = make_meta("search-corollary", common, Json{{"range", rjson}});

      Json checkpoint{{"range", rjson},
                      {"completed_shards", Json::array()},
                      {"last_tuple_per_shard", Json::object()},
                      {"results", Json::object()}};
      if (!sc_checkpoint.empty() && std::filesystem::exists(sc_checkpoint)) {
        std::ifstream f(sc_checkpoint);
        Json loaded;
        try {
          loaded = Json::parse(f);
        } catch (const nlohmann::json::exception& e) {
          throw RecordError(std::string("corrupt checkpoint: ") + e.what());
        }
        if (!loaded.contains("range") || loaded["range"] != rjson)
          throw std::invalid_argument("checkpoint " + sc_checkpoint + " was written for a different range");
        for (const char* key : {"completed_shards", "last_tuple_per_shard", "results"})
          if (!loaded.contains(key)) throw RecordError(std::string("checkpoint lacks '") + key + "'");
        checkpoint = loaded;
      }

      CorollaryOptions opts;
      opts.bound = bound;
      opts.threads = resolve_threads(sc_threads);
      opts.max_shards = sc_max_shards;
      for (const auto& s : checkpoint["completed_shards"]) {
        const auto parts = split(s.get<std::string>(), ',');
        if (parts.size() != 2) throw RecordError("bad shard name in checkpoint");
        opts.skip_shards.insert({parse_count(parts[0]), parse_count(parts[1])});
      }

      std::size_t residual = 0;
      auto shard_records = [&](const std::vector<TupleResult>& results) {
        Json recs = Json::array();
        for (const auto& tr : results)
          for (const auto& e : tr.exceptional)
            recs.push_back(solution_set_record(e, full_flags(e, ReducibilityMode::positive_only), meta));
        for (const auto& tr : results) {
          for (const auto& c : tr.certificates) {
            const bool open = c.kind != CertificateKind::BoundExceeded;
            if (sc_certs || (open && sc_permissive)) recs.push_back(certificate_record(c, meta));
          }
        }
        return recs;
      };
      opts.on_shard = [&](const Shard& sh, const std::vector<TupleResult>& results) {
        for (const auto& tr : results) residual += tr.residual.size();
        checkpoint["results"][sh.str()] = Json{{"records", shard_records(results)}, {"residual", [&] {
                                                 Json r = Json::array();
                                                 for (const auto& tr : results)
                                                   for (const auto& s : tr.residual) r.push_back(tr.tuple.str() + ":" + s);
                                                 return r;
                                               }()}};
        checkpoint["completed_shards"].push_back(sh.str());
        if (!results.empty()) checkpoint["last_tuple_per_shard"][sh.str()] = results.back().tuple.str();
        if (!sc_checkpoint.empty()) write_atomic(sc_checkpoint, checkpoint.dump(1) + "\n");
      };

      const CorollaryResult res = corollary_search(range, opts);
      if (res.interrupted) {
        err << "stopped after " << res.completed.size() << " shard(s); resume with --checkpoint\n";
        return kInconclusive;
      }
      std::size_t open = 0;
      for (const auto& sh : range_shards(range)) {
        const std::string key = sh.str();
        if (!checkpoint["results"].contains(key)) throw std::logic_error("shard " + key + " missing from results");
        for (const auto& rec : checkpoint["results"][key]["records"]) {
          Json copy = rec;
          copy["meta"] = meta;
          sink.write(copy);
        }
        open += checkpoint["results"][key]["residual"].size();
      }
      if (open) {
        err << open << " inconclusive sub-problem(s) remain";
        err << (sc_permissive ? "; their certificates were emitted\n" : "; rerun with --permissive to emit them\n");
        return kInconclusive;
      }
      return kComplete;
    }

    if (*sw) {
      SearchRange range = wide_defaults(sw_amax, sw_rs);
      range.a_min = sw_amin;
      range.pair_cap = sw_pair;
      range.third_cap = sw_third;
      if (sw_nofilter) range.filters = {true, false, false, false};
      const Json meta = make_meta(
          "search-wide", common,
          Json{{"range", range_json(range, 0)}, {"pair_cap", int_json(sw_pair)}, {"third_cap", int_json(sw_third)}});
      for (const auto& set : wide_search(range))
        sink.write(solution_set_record(set, full_flags(set, ReducibilityMode::positive_only), meta));
      return kComplete;
    }

    if (*f16) {
      const Int a(f16_a), b(f16_b);
      const Json meta = make_meta("family-eq16", common);
      for (const auto& t : build_two_solution_instances(a, b, f16_x1, f16_y1, f16_lim))
        sink.write(two_solution_record(t, full_flags(t.set, ReducibilityMode::positive_only), meta));
      return kComplete;
    }

    if (*f20) {
      const unsigned long A_lo = f20_A ? f20_A : f20_Amin;
      const unsigned long A_hi = f20_A ? f20_A : (f20_Amax ? f20_Amax : A_lo);
      const unsigned long m_lo = f20_m ? f20_m : f20_mmin;
      const unsigned long m_hi = f20_m ? f20_m : (f20_mmax ? f20_mmax : m_lo);
      std::vector<FamilyVariant> variants;
      if (f20_variant != "min-positive") variants.push_back(FamilyVariant::base);
      if (f20_variant != "base") variants.push_back(FamilyVariant::min_positive);
      const Json meta = make_meta("family-eq20", common);
      for (unsigned long A = A_lo; A <= A_hi; ++A)
        for (unsigned long m = m_lo; m <= m_hi; ++m)
          for (auto v : variants) {
            const FamilyRecord rec = family_eq20(Int(A), m, v);
            sink.write(family_record(rec, reduce_triple(rec.set), meta));
          }
      return kComplete;
    }

    if (*go) {
      if (!go_value_cap.empty()) {
        Int cap(go_value_cap, 10);
        const Int two64 = Int(1) << 64;
        if (cap < 1 || cap > two64) throw std::invalid_argument("--value-cap must be in [1, 2^64]");
        go_caps.value_cap = cap == two64 ? static_cast<u128>(~u64{0}) + 1 : static_cast<u128>(to_u64(cap));
      }
      const GoormaghtighResult res = goormaghtigh_search(go_caps);
      const Json meta = make_meta("goormaghtigh", common);
      for (const auto& s : res.solutions) sink.write(goormaghtigh_record(s, meta));
      if (go_n2)
        for (const auto& s : res.n_two) sink.write(goormaghtigh_record(s, meta));
      return kComplete;
    }

    if (*bd) {
      const Real C = matveev_constant(bd_degree, bd_chi);
      sink.write(bound_record(bd_degree, bd_chi, C, solve_global_bound(C), make_meta("bounds", common)));
      return kComplete;
    }

    if (*rc) {
      std::ifstream file;
      std::istream* in = &std::cin;
      if (rc_in != "-") {
        file.open(rc_in);
        if (!file) throw std::runtime_error("cannot open " + rc_in);
        in = &file;
      }
      std::string line;
      std::size_t lineno = 0, seen = 0, bad = 0;
      const Json meta = make_meta("replay-certificate", common);
      while (std::getline(*in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        Json rec;
        try {
          rec = Json::parse(line);
        } catch (const nlohmann::json::exception& e) {
          throw RecordError("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!rec.is_object() || !rec.contains("kind") || rec["kind"] != "certificate") continue;
        ++seen;
        SieveCertificate cert;
        try {
          cert = certificate_from_record(rec);
        } catch (const RecordError& e) {
          throw RecordError("line " + std::to_string(lineno) + ": " + e.what());
        }
        ReplayResult r;
        try {
          r = replay_certificate(cert);
        } catch (const std::invalid_argument& e) {
          throw RecordError("line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!r.match) ++bad;
        sink.write(Json{{"kind", "replay"},
                        {"equation", equation_json(cert.eq)},
                        {"verdict", r.match ? "match" : "mismatch"},
                        {"detail", r.detail},
                        {"meta", meta}});
      }
      err << seen << " certificate(s) replayed, " << bad << " mismatch(es)\n";
      return bad ? kError : kComplete;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kError;
  }
  return kError;
}

}  // namespace pillai::cli
