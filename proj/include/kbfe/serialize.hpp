#pragma once

#include <json.hpp>

#include "kbfe/check.hpp"
#include "kbfe/decompose.hpp"
#include "kbfe/forms.hpp"
#include "kbfe/oracle.hpp"
#include "kbfe/table.hpp"

namespace kbfe {

using Json = nlohmann::json;

/// Exact reals become strings ("3", "-1/2"); approximate ones numbers with
/// 12 significant digits.
Json to_json(const Real& r);
Real real_from_json(const Json& j);

Json to_json(const Element& x);
Element element_from_json(const Group& g, const Json& j);

Json to_json(const Domain& d);
Domain domain_from_json(const Group& g, const Json& j);

/// Positive: {"log": "p/q"} or a number. Sign: +-1. Complex: [re, im] or
/// {"log": ..., "turn": ...}. Zero is [0, 0].
Json to_json(const Value& v, Kind kind);
Value value_from_json(const Json& j, Kind kind);

/// {"group", "domain", "kind", "values": [[coords, value], ...]}
Json to_json(const FuncTable& t);
Json to_json(const RealTable& t);
/// Accepts values in any order but requires every domain point exactly once.
FuncTable table_from_json(const Json& j);
RealTable real_table_from_json(const Json& j);

Json to_json(const Witness& w);
Json to_json(const CheckReport& r);

Json to_json(const QuadraticForm& p);
Json to_json(const AdditiveMap& l);
Json to_json(const CosetConstantMap& r);
Json to_json(const CharacterSpec& a);
Json to_json(const SignMap& a);
Json to_json(const Subgroup& s);
Json to_json(const PositiveSolutionForm& f);
Json to_json(const HermitianSolutionForm& f);
Json to_json(const SelfSolutionForm& f);

QuadraticForm quadratic_from_json(const Group& g, const Json& j);
AdditiveMap additive_from_json(const Group& g, const Json& j);
CosetConstantMap coset_map_from_json(const Group& g, const Json& j);
CharacterSpec character_from_json(const Group& g, const Json& j);
SignMap sign_map_from_json(const Group& g, const Json& j);
PositiveSolutionForm positive_form_from_json(const Json& j);
HermitianSolutionForm hermitian_form_from_json(const Json& j);

Json to_json(const SignSolutionCensus& c);
Json to_json(const RestrictedKbResult& r);
Json to_json(const SuiteReport& r);

/// {"error": kind, "message": ..., "invariant": ..., "witness": ...}
Json error_to_json(const std::exception& e);

/// Stable text form: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

}  // namespace kbfe
