#pragma once

#include <span>
#include <string>

#include "mcerl/domain.hpp"

namespace mcerl {

// Lookup. An unbound name is a regular exception outcome:
// (Error, 'novar', atom of the rendered key name).
EvalOutcome get_value(const Environment& env, const EnvKey& k);

Environment insert_value(const Environment& env, EnvKey k, Value v);

// Left-to-right fold of insert_value. pre: vars.size() == vals.size().
Environment append_vars_to_env(std::span<const Var> vars,
                               std::span<const Value> vals,
                               const Environment& env);

// Binds each fid to a closure over env whose ext lists all the given
// definitions, making them visible to themselves at closure unfolding.
Environment append_funs_to_env(
    std::span<const FunctionIdentifier> fids,
    std::span<const std::vector<Var>> paramss,
    std::span<const ExprPtr> bodies, const Environment& env);

// Re-ties the recursive knot at application time: ref extended with a
// closure for every ext entry.
Environment get_env(const Environment& ref,
                    std::span<const std::pair<FunctionIdentifier,
                                              FunctionExpression>> ext);

// Same fold as append_vars_to_env; pre: both spans have length 3.
Environment append_try_vars_to_env(std::span<const Var> vl,
                                   std::span<const Value> vals,
                                   const Environment& env);

std::string render_env_key(const EnvKey& k);

}  // namespace mcerl
