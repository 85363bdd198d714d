#pragma once

#include <string>

#include <json.hpp>

#include "mcerl/bigstep.hpp"
#include "mcerl/difftest.hpp"
#include "mcerl/domain.hpp"

namespace mcerl {

using Json = nlohmann::json;

// Canonical rendering: keys sorted (nlohmann objects already are),
// integers as decimal strings, atoms as {"atom": name}, closure bodies as
// source text. Byte-identical across runs for identical inputs.

Json value_to_json(const Value& v);
Json outcome_to_json(const EvalOutcome& o);
Json effects_to_json(const SideEffectList& eff);
Json result_to_json(const ResultType& r);          // {"result": ..., "effects": ...}
Json env_to_json(const Environment& env);
Json derivation_to_json(const Derivation& d);
Json search_outcome_to_json(const SearchOutcome& s);
Json pretty_trace_to_json(const PrettyTrace& t);
Json diff_report_to_json(const DiffReport& r);

// Throw std::runtime_error on malformed documents.
Value value_from_json(const Json& j);
EvalOutcome outcome_from_json(const Json& j);
SideEffectList effects_from_json(const Json& j);
Environment env_from_json(const Json& j);
Derivation derivation_from_json(const Json& j);

std::string canonical_dump(const Json& j);

}  // namespace mcerl
