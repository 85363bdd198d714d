#include "mcerl/env.hpp"

#include <cassert>

namespace mcerl {

std::string render_env_key(const EnvKey& k) {
  if (k.index() == 0) return std::get<Var>(k);
  const auto& fid = std::get<FunctionIdentifier>(k);
  return fid.name + "/" + std::to_string(fid.arity);
}

EvalOutcome get_value(const Environment& env, const EnvKey& k) {
  if (const Value* v = env.lookup(k)) return *v;
  return Exception{ExceptionClass::Error, Value::atom("novar"),
                   Value::atom(render_env_key(k))};
}

Environment insert_value(const Environment& env, EnvKey k, Value v) {
  return env.with(std::move(k), std::move(v));
}

Environment append_vars_to_env(std::span<const Var> vars,
                               std::span<const Value> vals,
                               const Environment& env) {
  assert(vars.size() == vals.size());
  Environment out = env;
  for (std::size_t i = 0; i < vars.size(); ++i)
    out = insert_value(out, EnvKey{vars[i]}, vals[i]);
  return out;
}

Environment append_funs_to_env(
    std::span<const FunctionIdentifier> fids,
    std::span<const std::vector<Var>> paramss,
    std::span<const ExprPtr> bodies, const Environment& env) {
  assert(fids.size() == paramss.size() && fids.size() == bodies.size());
  std::vector<std::pair<FunctionIdentifier, FunctionExpression>> ext;
  ext.reserve(fids.size());
  for (std::size_t i = 0; i < fids.size(); ++i)
    ext.emplace_back(fids[i], FunctionExpression{paramss[i], bodies[i]});
  Environment out = env;
  for (std::size_t i = 0; i < fids.size(); ++i)
    out = insert_value(out, EnvKey{fids[i]},
                       Value::closure({env, ext, paramss[i], bodies[i]}));
  return out;
}

Environment get_env(const Environment& ref,
                    std::span<const std::pair<FunctionIdentifier,
                                              FunctionExpression>> ext) {
  Environment out = ref;
  std::vector<std::pair<FunctionIdentifier, FunctionExpression>> ext_copy(
      ext.begin(), ext.end());
  for (const auto& [fid, fe] : ext)
    out = insert_value(out, EnvKey{fid},
                       Value::closure({ref, ext_copy, fe.params, fe.body}));
  return out;
}

Environment append_try_vars_to_env(std::span<const Var> vl,
                                   std::span<const Value> vals,
                                   const Environment& env) {
  assert(vl.size() == 3 && vals.size() == 3);
  return append_vars_to_env(vl, vals, env);
}

}  // namespace mcerl
