#include "mcerl/fbs.hpp"

#include "mcerl/builtins.hpp"

namespace mcerl {

ResultListType eval_elems(const ElemEvaluator& f, const Environment& env,
                          std::span<const ExprPtr> exps,
                          const SideEffectList& eff) {
  if (exps.empty()) return ListResult{std::vector<Value>{}, eff};
  ResultType head = f(env, *exps.front(), eff);
  if (std::holds_alternative<Timeout>(head)) return Timeout{};
  if (std::holds_alternative<Failure>(head)) return Failure{};
  const auto& r = std::get<Result>(head);
  if (is_exception(r.res)) return ListResult{std::get<Exception>(r.res), r.eff};
  ResultListType rest = eval_elems(f, env, exps.subspan(1), r.eff);
  if (!std::holds_alternative<ListResult>(rest)) return rest;
  auto& lr = std::get<ListResult>(rest);
  if (std::holds_alternative<Exception>(lr.res)) return rest;
  auto& values = std::get<std::vector<Value>>(lr.res);
  values.insert(values.begin(), std::get<Value>(r.res));
  return rest;
}

ResultType eval_fbos_expr(Clock clock, const Environment& env,
                          const Expression& exp, const SideEffectList& eff) {
  if (clock == 0) return Timeout{};
  const Clock clock1 = clock - 1;
  const auto recurse = [clock1](const Environment& e, const Expression& x,
                                const SideEffectList& ef) {
    return eval_fbos_expr(clock1, e, x, ef);
  };

  return std::visit(
      overloaded{
          [&](const ELit& x) -> ResultType {
            return Result{Value::lit(x.lit), eff};
          },
          [&](const EVar& x) -> ResultType {
            return Result{get_value(env, EnvKey{x.name}), eff};
          },
          [&](const EFunId& x) -> ResultType {
            return Result{get_value(env, EnvKey{x.fid}), eff};
          },
          [&](const EFun& x) -> ResultType {
            return Result{Value::closure({env, {}, x.params, x.body}), eff};
          },
          [&](const ECall& x) -> ResultType {
            ResultListType args = eval_elems(recurse, env, x.params, eff);
            if (std::holds_alternative<Timeout>(args)) return Timeout{};
            if (std::holds_alternative<Failure>(args)) return Failure{};
            const auto& lr = std::get<ListResult>(args);
            if (std::holds_alternative<Exception>(lr.res))
              return Result{std::get<Exception>(lr.res), lr.eff};
            auto [res, eff2] = eval_builtin(
                x.fname, std::get<std::vector<Value>>(lr.res), lr.eff);
            return Result{std::move(res), std::move(eff2)};
          },
          [&](const EApp& x) -> ResultType {
            ResultType fn = recurse(env, *x.fn, eff);
            if (!std::holds_alternative<Result>(fn)) return fn;
            const auto& fr = std::get<Result>(fn);
            if (is_exception(fr.res)) return fn;
            const Value& v = std::get<Value>(fr.res);
            ResultListType args = eval_elems(recurse, env, x.params, fr.eff);
            if (std::holds_alternative<Timeout>(args)) return Timeout{};
            if (std::holds_alternative<Failure>(args)) return Failure{};
            const auto& lr = std::get<ListResult>(args);
            if (std::holds_alternative<Exception>(lr.res))
              return Result{std::get<Exception>(lr.res), lr.eff};
            const auto& vals = std::get<std::vector<Value>>(lr.res);
            if (!v.is_closure()) return Result{make_badfun(v), lr.eff};
            const Closure& c = v.as_closure();
            if (c.params.size() != vals.size())
              return Result{make_badarity(v), lr.eff};
            return eval_fbos_expr(
                clock1,
                append_vars_to_env(c.params, vals, get_env(c.ref, c.ext)),
                *c.body, lr.eff);
          },
          [&](const ELet& x) -> ResultType {
            ResultType bound = recurse(env, *x.bound, eff);
            if (!std::holds_alternative<Result>(bound)) return bound;
            const auto& br = std::get<Result>(bound);
            if (is_exception(br.res)) return bound;
            return eval_fbos_expr(
                clock1,
                insert_value(env, EnvKey{x.var}, std::get<Value>(br.res)),
                *x.body, br.eff);
          },
          [&](const ELetRec& x) -> ResultType {
            const FunctionIdentifier fids[] = {x.fid};
            const std::vector<Var> paramss[] = {x.params};
            const ExprPtr bodies[] = {x.fun_body};
            return eval_fbos_expr(
                clock1, append_funs_to_env(fids, paramss, bodies, env),
                *x.cont, eff);
          },
          [&](const ETry& x) -> ResultType {
            // The one place exceptions are not just propagated: they select
            // the catch branch. Timeout/Failure still pass through.
            ResultType guarded = recurse(env, *x.guarded, eff);
            if (!std::holds_alternative<Result>(guarded)) return guarded;
            const auto& gr = std::get<Result>(guarded);
            if (is_value(gr.res)) {
              return eval_fbos_expr(
                  clock1,
                  insert_value(env, EnvKey{x.var}, std::get<Value>(gr.res)),
                  *x.on_value, gr.eff);
            }
            const auto& ex = std::get<Exception>(gr.res);
            const Value vals[] = {exclass_to_value(ex.cls), ex.reason1,
                                  ex.reason2};
            return eval_fbos_expr(
                clock1, append_try_vars_to_env(x.catch_vars, vals, env),
                *x.on_exc, gr.eff);
          },
      },
      exp.node);
}

ResultType eval_program(const Expression& exp, Clock clock) {
  return eval_fbos_expr(clock, Environment{}, exp, SideEffectList{});
}

}  // namespace mcerl
