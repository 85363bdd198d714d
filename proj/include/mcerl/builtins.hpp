#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mcerl/domain.hpp"

namespace mcerl {

// A builtin maps a value list and the current trace to an outcome and the
// extended trace. Builtins are the only producers of side effects.
using BuiltinFn = std::function<std::pair<EvalOutcome, SideEffectList>(
    const std::vector<Value>&, const SideEffectList&)>;

using BuiltinTable = std::map<std::string, BuiltinFn>;

// Exactly {"+", "-", "*", "fwrite", "fread"}.
const BuiltinTable& builtin_table();

bool is_builtin(const std::string& fname);

// fwrite and fread extend the trace; arithmetic does not.
bool builtin_has_effects(const std::string& fname);

std::vector<std::string> builtin_names();

// Dispatch through the table. Unknown names give (Error, 'undef', fname).
std::pair<EvalOutcome, SideEffectList> eval_builtin(
    const std::string& fname, const std::vector<Value>& vals,
    const SideEffectList& eff);

}  // namespace mcerl
