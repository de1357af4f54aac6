#pragma once

// JSON-lines records. Every integer is written as a decimal string.

#include "pillai/bounds.hpp"
#include "pillai/families.hpp"
#include "pillai/search.hpp"

#include <json.hpp>

#include <string>

namespace pillai::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";
inline constexpr const char* kToolVersion = "1.0.0";

/// Thrown for malformed records.
class RecordError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Json int_json(const Int& v);
Json int_json(unsigned long v);
Int json_int(const Json& j, const char* field);
unsigned long json_ulong(const Json& j, const char* field);

Json instance_json(const PillaiInstance& inst);
PillaiInstance instance_from_json(const Json& j);

Json solution_json(const SignedSolution& s);
SignedSolution solution_from_json(const Json& j);

Json flags_json(const InstanceFlags& f);

Json equation_json(const PairEquation& eq);
PairEquation equation_from_json(const Json& j);

/// {"primes", "modX", "modY", "residues", "result", "bound", "box", "solutions"}.
Json certificate_body_json(const SieveCertificate& cert);

/// Records; `meta` is copied in verbatim.
Json solution_set_record(const SolutionSet& set, const InstanceFlags& flags, const Json& meta);
Json certificate_record(const SieveCertificate& cert, const Json& meta);
Json family_record(const FamilyRecord& rec, const std::optional<GoormaghtighReduction>& red, const Json& meta);
Json two_solution_record(const TwoSolutionInstance& inst, const InstanceFlags& flags, const Json& meta);
Json goormaghtigh_record(const GoormaghtighSolution& sol, const Json& meta);
Json bound_record(unsigned degree, unsigned chi, const Real& C, u64 z_star, const Json& meta);

/// Parses a certificate record, checking the schema major version.
/// Throws RecordError on malformed input.
SieveCertificate certificate_from_record(const Json& record);

}  // namespace pillai::cli
