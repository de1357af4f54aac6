#include "records.hpp"

namespace pillai::cli {

namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw RecordError(std::string("missing field '") + name + "'");
  return j.at(name);
}

}  // namespace

Json int_json(const Int& v) { return v.get_str(); }
Json int_json(unsigned long v) { return std::to_string(v); }

Int json_int(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string()) throw RecordError(std::string("field '") + name + "' must be a decimal string");
  Int out;
  const std::string s = v.get<std::string>();
  if (s.empty() || out.set_str(s, 10) != 0) throw RecordError(std::string("field '") + name + "' is not an integer");
  return out;
}

unsigned long json_ulong(const Json& j, const char* name) {
  const Int v = json_int(j, name);
  if (v < 0 || !v.fits_ulong_p()) throw RecordError(std::string("field '") + name + "' out of range");
  return v.get_ui();
}

Json instance_json(const PillaiInstance& inst) {
  return Json{{"a", int_json(inst.a)}, {"b", int_json(inst.b)}, {"c", int_json(inst.c)},
              {"r", int_json(inst.r)}, {"s", int_json(inst.s)}};
}

PillaiInstance instance_from_json(const Json& j) {
  PillaiInstance inst(json_int(j, "a"), json_int(j, "b"), json_int(j, "c"), json_int(j, "r"), json_int(j, "s"));
  if (!inst.valid()) throw RecordError("instance out of range: " + inst.str());
  return inst;
}

Json solution_json(const SignedSolution& s) {
  return Json{{"x", int_json(s.x)}, {"y", int_json(s.y)}, {"u", int_json(s.u)}, {"v", int_json(s.v)}};
}

SignedSolution solution_from_json(const Json& j) {
  SignedSolution s{json_ulong(j, "x"), json_ulong(j, "y"), static_cast<unsigned>(json_ulong(j, "u")),
                   static_cast<unsigned>(json_ulong(j, "v"))};
  if (s.u > 1 || s.v > 1) throw RecordError("sign bits must be 0 or 1");
  return s;
}

Json flags_json(const InstanceFlags& f) {
  Json j{{"improper", f.improper}, {"redundant", f.redundant}, {"reducible", nullptr}};
  if (f.reducible) {
    const auto& w = *f.reducible;
    j["reducible"] = Json{{"k", int_json(w.k)}, {"r1", int_json(w.r1)}, {"s1", int_json(w.s1)},
                          {"w", int_json(w.w)}, {"z", int_json(w.z)}};
  }
  return j;
}

Json equation_json(const PairEquation& eq) {
  return Json{{"r", int_json(eq.r)},   {"a", int_json(eq.a)},   {"s", int_json(eq.s)}, {"b", int_json(eq.b)},
              {"x0", int_json(eq.x0)}, {"y0", int_json(eq.y0)}, {"m", int_json(eq.m)}, {"n", int_json(eq.n)}};
}

PairEquation equation_from_json(const Json& j) {
  PairEquation eq;
  eq.r = json_int(j, "r");
  eq.a = json_int(j, "a");
  eq.s = json_int(j, "s");
  eq.b = json_int(j, "b");
  eq.x0 = json_ulong(j, "x0");
  eq.y0 = json_ulong(j, "y0");
  eq.m = static_cast<unsigned>(json_ulong(j, "m"));
  eq.n = static_cast<unsigned>(json_ulong(j, "n"));
  if (eq.m > 1 || eq.n > 1) throw RecordError("sign bits m, n must be 0 or 1");
  if (eq.r < 1 || eq.s < 1 || eq.a < 2 || eq.b < 2) throw RecordError("equation needs r, s > 0 and a, b > 1");
  return eq;
}

Json certificate_body_json(const SieveCertificate& cert) {
  Json primes = Json::array();
  for (const auto& p : cert.state.primes)
    primes.push_back(Json{{"q", int_json(p.q)},
                          {"k", int_json(p.k)},
                          {"modulus", int_json(p.modulus)},
                          {"ord_a", int_json(p.ord_a)},
                          {"ord_b", int_json(p.ord_b)}});
  Json residues = Json::array();
  for (const auto& c : cert.state.residues) residues.push_back(Json::array({int_json(c.x), int_json(c.y)}));
  Json sols = Json::array();
  for (const auto& s : cert.solutions) sols.push_back(Json{{"X", int_json(s.X)}, {"Y", int_json(s.Y)}});
  return Json{{"primes", primes},
              {"modX", int_json(cert.state.mod_x)},
              {"modY", int_json(cert.state.mod_y)},
              {"residues", residues},
              {"result", to_string(cert.kind)},
              {"bound", int_json(cert.bound)},
              {"box", int_json(cert.box)},
              {"solutions", sols}};
}

Json solution_set_record(const SolutionSet& set, const InstanceFlags& flags, const Json& meta) {
  Json sols = Json::array();
  for (const auto& s : set.solutions()) sols.push_back(solution_json(s));
  return Json{{"kind", "solution-set"},
              {"instance", instance_json(set.instance())},
              {"solutions", sols},
              {"flags", flags_json(flags)},
              {"meta", meta}};
}

Json certificate_record(const SieveCertificate& cert, const Json& meta) {
  return Json{{"kind", "certificate"},
              {"equation", equation_json(cert.eq)},
              {"certificate", certificate_body_json(cert)},
              {"meta", meta}};
}

Json family_record(const FamilyRecord& rec, const std::optional<GoormaghtighReduction>& red, const Json& meta) {
  Json sols = Json::array();
  for (const auto& s : rec.set.solutions()) sols.push_back(solution_json(s));
  Json fam{{"variant", rec.variant == FamilyVariant::base ? "base" : "min_positive"},
           {"a0", int_json(rec.a0)},
           {"j", int_json(rec.j)},
           {"A", int_json(rec.A)},
           {"m", int_json(rec.m)},
           {"d", int_json(rec.d)},
           {rec.variant == FamilyVariant::base ? "h" : "h1", int_json(rec.h)}};
  if (red)
    fam["reduction"] = Json{{"R", int_json(red->R)},
                            {"S", int_json(red->S)},
                            {"t", int_json(red->t)},
                            {"T", int_json(red->T)},
                            {"g1", int_json(red->g1)},
                            {"g2", int_json(red->g2)},
                            {"A", int_json(red->solution.A)},
                            {"B", int_json(red->solution.B)},
                            {"m", int_json(red->solution.m)},
                            {"n", int_json(red->solution.n)},
                            {"value", int_json(red->solution.value)}};
  return Json{{"kind", "family"},
              {"instance", instance_json(rec.set.instance())},
              {"solutions", sols},
              {"flags", flags_json(rec.flags)},
              {"family", fam},
              {"meta", meta}};
}

Json two_solution_record(const TwoSolutionInstance& inst, const InstanceFlags& flags, const Json& meta) {
  Json sols = Json::array();
  for (const auto& s : inst.set.solutions()) sols.push_back(solution_json(s));
  return Json{{"kind", "family"},
              {"instance", instance_json(inst.set.instance())},
              {"solutions", sols},
              {"flags", flags_json(flags)},
              {"family", Json{{"variant", "two_solution"},
                              {"dx", int_json(inst.dx)},
                              {"dy", int_json(inst.dy)},
                              {"sign_a", inst.sign_a > 0 ? "+" : "-"},
                              {"sign_b", inst.sign_b > 0 ? "+" : "-"}}},
              {"meta", meta}};
}

Json goormaghtigh_record(const GoormaghtighSolution& sol, const Json& meta) {
  return Json{{"kind", "goormaghtigh"},
              {"solution", Json{{"A", int_json(sol.A)},
                                {"B", int_json(sol.B)},
                                {"m", int_json(sol.m)},
                                {"n", int_json(sol.n)},
                                {"value", int_json(sol.value)}}},
              {"meta", meta}};
}

Json bound_record(unsigned degree, unsigned chi, const Real& C, u64 z_star, const Json& meta) {
  return Json{{"kind", "bound-report"},
              {"bound", Json{{"degree", int_json(degree)},
                             {"chi", int_json(chi)},
                             {"C1", C.str(50, std::ios_base::fmtflags(0))},
                             {"C1_sci", format_scientific(C, 11)},
                             {"Z_star", int_json(z_star)}}},
              {"meta", meta}};
}

SieveCertificate certificate_from_record(const Json& record) {
  try {
    if (!record.is_object() || field(record, "kind") != "certificate") throw RecordError("not a certificate record");
    const Json& meta = field(record, "meta");
    const std::string schema = field(meta, "schema").get<std::string>();
    const std::string major = schema.substr(0, schema.find('.'));
    const std::string ours = std::string(kSchemaVersion).substr(0, std::string(kSchemaVersion).find('.'));
    if (major != ours) throw RecordError("unsupported schema version " + schema);

    SieveCertificate cert;
    cert.eq = equation_from_json(field(record, "equation"));
    const Json& body = field(record, "certificate");
    cert.kind = certificate_kind_from_string(field(body, "result").get<std::string>());
    cert.bound = json_ulong(body, "bound");
    cert.box = json_ulong(body, "box");
    cert.state.mod_x = json_ulong(body, "modX");
    cert.state.mod_y = json_ulong(body, "modY");
    for (const auto& p : field(body, "primes")) {
      PrimeInfo info;
      info.q = json_ulong(p, "q");
      info.k = static_cast<unsigned>(json_ulong(p, "k"));
      info.modulus = json_ulong(p, "modulus");
      info.ord_a = json_ulong(p, "ord_a");
      info.ord_b = json_ulong(p, "ord_b");
      cert.state.primes.push_back(info);
    }
    for (const auto& c : field(body, "residues")) {
      if (!c.is_array() || c.size() != 2) throw RecordError("residue must be a pair");
      Json pair{{"x", c[0]}, {"y", c[1]}};
      cert.state.residues.push_back({json_ulong(pair, "x"), json_ulong(pair, "y")});
    }
    if (!std::is_sorted(cert.state.residues.begin(), cert.state.residues.end()))
      throw RecordError("residues must be sorted");
    for (const auto& s : field(body, "solutions")) cert.solutions.push_back({json_ulong(s, "X"), json_ulong(s, "Y")});
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw RecordError(std::string("malformed certificate record: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw RecordError(e.what());
  }
}

}  // namespace pillai::cli
