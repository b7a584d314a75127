#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "qpencil/descent.hpp"

namespace qpencil {

using Json = nlohmann::json;

/// Instance file: Gram matrices of F and G (entries as integers or "p/q"
/// strings), three plane basis vectors, and optional planted data.
struct Instance {
  QuadraticForm F, G;
  LinearSubspace plane;
  std::optional<std::vector<Integer>> point;
  std::optional<Route> route;
  std::optional<std::uint64_t> seed;

  std::size_t n() const { return F.dim() - 1; }
};

/// Parses and validates an instance. Errors are InvalidInput with messages of
/// the form "<source>:<line>:<column>: <field>: <problem>".
Instance parse_instance(const std::string& text, const std::string& source = "<input>");
Instance load_instance(const std::string& path);
Json instance_to_json(const Instance& inst);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string canonical_dump(const Json& j);

// Exact values are strings ("3", "-1/2"); counts are JSON integers.
Json to_json(const Rational& r);
Json to_json(const std::vector<Integer>& v);
Json to_json(const QMatrix& m);
Json to_json(const UniPoly& p);
Json to_json(const DiscriminantData& d);
Json to_json(const CensusReport& c);
Json to_json(const RankFourPairReport& r);
Json to_json(const HypothesisReport& r);
Json to_json(const SmoothnessReport& s);
Json to_json(const LocalReport& r);
Json to_json(const LocalEvidence& e);
Json to_json(const ObstructionCertificate& c);
Json to_json(const DescentTrace& t);
Json to_json(const SearchResult& r);

/// Inverses used to replay reports; throw InvalidInput on malformed data.
DescentTrace trace_from_json(const Json& j);
ObstructionCertificate obstruction_from_json(const Json& j);

const char* outcome_name(SearchOutcome o);

/// Re-verifies a find-point report against the instance it embeds: the trace
/// for found points, the certificate for obstructions.
ReplayReport replay_report(const Json& report);

}  // namespace qpencil
