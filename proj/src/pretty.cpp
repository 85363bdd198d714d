#include "mcerl/pretty.hpp"

#include "mcerl/builtins.hpp"

namespace mcerl {

std::string_view pretty_rule_name(PrettyRule r) {
  switch (r) {
    case PrettyRule::Lit: return "Lit";
    case PrettyRule::Var: return "Var";
    case PrettyRule::FunId: return "FunId";
    case PrettyRule::Fun: return "Fun";
    case PrettyRule::LetRec: return "LetRec";
    case PrettyRule::App1: return "App1";
    case PrettyRule::ExcApp1: return "ExcApp1";
    case PrettyRule::FinApp1: return "FinApp1";
    case PrettyRule::ExcApp2: return "ExcApp2";
    case PrettyRule::FinApp2: return "FinApp2";
    case PrettyRule::ExcApp2Badfun: return "ExcApp2Badfun";
    case PrettyRule::ExcApp2Badarity: return "ExcApp2Badarity";
    case PrettyRule::FinList: return "FinList";
    case PrettyRule::ExcList: return "ExcList";
    case PrettyRule::StepList: return "StepList";
    case PrettyRule::Call: return "Call";
    case PrettyRule::FinCall: return "FinCall";
    case PrettyRule::ExcCall: return "ExcCall";
    case PrettyRule::Let: return "Let";
    case PrettyRule::FinLet: return "FinLet";
    case PrettyRule::ExcLet: return "ExcLet";
    case PrettyRule::Try: return "Try";
    case PrettyRule::FinTry: return "FinTry";
    case PrettyRule::CatchTry: return "CatchTry";
  }
  return "?";
}

ValueListOutcome mk_result(const EvalOutcome& res,
                           const std::vector<Value>& vals) {
  if (is_exception(res)) return std::get<Exception>(res);
  std::vector<Value> out = vals;
  out.push_back(std::get<Value>(res));
  return out;
}

namespace {

struct PrettyEval {
  PrettyTrace trace;

  void tag(PrettyRule r) { trace.push_back(r); }

  ResultType eval_term(const Environment& env, const PrettyTerm& t,
                       const SideEffectList& eff, std::size_t depth) {
    if (depth == 0) return Timeout{};
    if (const auto* src = std::get_if<ExprPtr>(&t))
      return eval_source(env, **src, eff, depth);
    if (const auto* aux = std::get_if<AuxExpression>(&t))
      return eval_aux(env, *aux, eff, depth);
    // A list term in the expression judgment: exceptions propagate, a
    // value-list accumulator is meaningless here.
    ResultListType lr = eval_list(env, std::get<AList>(t), eff, depth);
    if (std::holds_alternative<Timeout>(lr)) return Timeout{};
    if (std::holds_alternative<Failure>(lr)) return Failure{};
    const auto& l = std::get<ListResult>(lr);
    if (std::holds_alternative<Exception>(l.res))
      return Result{std::get<Exception>(l.res), l.eff};
    return Failure{};
  }

  ResultType eval_source(const Environment& env, const Expression& e,
                         const SideEffectList& eff, std::size_t depth) {
    return std::visit(
        overloaded{
            [&](const ELit& x) -> ResultType {
              tag(PrettyRule::Lit);
              return Result{Value::lit(x.lit), eff};
            },
            [&](const EVar& x) -> ResultType {
              tag(PrettyRule::Var);
              return Result{get_value(env, EnvKey{x.name}), eff};
            },
            [&](const EFunId& x) -> ResultType {
              tag(PrettyRule::FunId);
              return Result{get_value(env, EnvKey{x.fid}), eff};
            },
            [&](const EFun& x) -> ResultType {
              tag(PrettyRule::Fun);
              return Result{Value::closure({env, {}, x.params, x.body}), eff};
            },
            [&](const ELetRec& x) -> ResultType {
              tag(PrettyRule::LetRec);
              const FunctionIdentifier fids[] = {x.fid};
              const std::vector<Var> paramss[] = {x.params};
              const ExprPtr bodies[] = {x.fun_body};
              return eval_term(append_funs_to_env(fids, paramss, bodies, env),
                               x.cont, eff, depth - 1);
            },
            [&](const EApp& x) -> ResultType {
              tag(PrettyRule::App1);
              ResultType fn = eval_term(env, x.fn, eff, depth - 1);
              if (!std::holds_alternative<Result>(fn)) return fn;
              const auto& fr = std::get<Result>(fn);
              return eval_term(env, AuxExpression{AApp1{fr.res, x.params}},
                               fr.eff, depth - 1);
            },
            [&](const ECall& x) -> ResultType {
              tag(PrettyRule::Call);
              ResultListType args = eval_list(
                  env, AList{x.params, std::vector<Value>{}}, eff, depth - 1);
              if (std::holds_alternative<Timeout>(args)) return Timeout{};
              if (std::holds_alternative<Failure>(args)) return Failure{};
              const auto& lr = std::get<ListResult>(args);
              return eval_term(env, AuxExpression{ACall{x.fname, lr.res}},
                               lr.eff, depth - 1);
            },
            [&](const ELet& x) -> ResultType {
              tag(PrettyRule::Let);
              ResultType bound = eval_term(env, x.bound, eff, depth - 1);
              if (!std::holds_alternative<Result>(bound)) return bound;
              const auto& br = std::get<Result>(bound);
              return eval_term(env,
                               AuxExpression{ALet{x.var, br.res, x.body}},
                               br.eff, depth - 1);
            },
            [&](const ETry& x) -> ResultType {
              tag(PrettyRule::Try);
              ResultType guarded = eval_term(env, x.guarded, eff, depth - 1);
              if (!std::holds_alternative<Result>(guarded)) return guarded;
              const auto& gr = std::get<Result>(guarded);
              return eval_term(
                  env,
                  AuxExpression{ATry{gr.res, x.var, x.on_value, x.catch_vars,
                                     x.on_exc}},
                  gr.eff, depth - 1);
            },
        },
        e.node);
  }

  ResultType eval_aux(const Environment& env, const AuxExpression& aux,
                      const SideEffectList& eff, std::size_t depth) {
    return std::visit(
        overloaded{
            [&](const AApp1& x) -> ResultType {
              if (is_exception(x.fn)) {
                tag(PrettyRule::ExcApp1);
                return Result{x.fn, eff};
              }
              tag(PrettyRule::FinApp1);
              ResultListType args = eval_list(
                  env, AList{x.params, std::vector<Value>{}}, eff, depth - 1);
              if (std::holds_alternative<Timeout>(args)) return Timeout{};
              if (std::holds_alternative<Failure>(args)) return Failure{};
              const auto& lr = std::get<ListResult>(args);
              return eval_term(
                  env, AuxExpression{AApp2{std::get<Value>(x.fn), lr.res}},
                  lr.eff, depth - 1);
            },
            [&](const AApp2& x) -> ResultType {
              if (std::holds_alternative<Exception>(x.args)) {
                tag(PrettyRule::ExcApp2);
                return Result{std::get<Exception>(x.args), eff};
              }
              const auto& vals = std::get<std::vector<Value>>(x.args);
              if (!x.fn.is_closure()) {
                tag(PrettyRule::ExcApp2Badfun);
                return Result{make_badfun(x.fn), eff};
              }
              const Closure& c = x.fn.as_closure();
              if (c.params.size() != vals.size()) {
                tag(PrettyRule::ExcApp2Badarity);
                return Result{make_badarity(x.fn), eff};
              }
              tag(PrettyRule::FinApp2);
              return eval_term(
                  append_vars_to_env(c.params, vals, get_env(c.ref, c.ext)),
                  c.body, eff, depth - 1);
            },
            [&](const ACall& x) -> ResultType {
              if (std::holds_alternative<Exception>(x.args)) {
                tag(PrettyRule::ExcCall);
                return Result{std::get<Exception>(x.args), eff};
              }
              tag(PrettyRule::FinCall);
              auto [res, eff2] = eval_builtin(
                  x.fname, std::get<std::vector<Value>>(x.args), eff);
              return Result{std::move(res), std::move(eff2)};
            },
            [&](const ALet& x) -> ResultType {
              if (is_exception(x.bound)) {
                tag(PrettyRule::ExcLet);
                return Result{x.bound, eff};
              }
              tag(PrettyRule::FinLet);
              return eval_term(
                  insert_value(env, EnvKey{x.var}, std::get<Value>(x.bound)),
                  x.body, eff, depth - 1);
            },
            [&](const ATry& x) -> ResultType {
              if (is_value(x.guarded)) {
                tag(PrettyRule::FinTry);
                return eval_term(insert_value(env, EnvKey{x.var},
                                              std::get<Value>(x.guarded)),
                                 x.on_value, eff, depth - 1);
              }
              tag(PrettyRule::CatchTry);
              const Exception& ex = std::get<Exception>(x.guarded);
              const Value vals[] = {exclass_to_value(ex.cls), ex.reason1,
                                    ex.reason2};
              return eval_term(append_try_vars_to_env(x.catch_vars, vals, env),
                               x.on_exc, eff, depth - 1);
            },
        },
        aux);
  }

  ResultListType eval_list(const Environment& env, const AList& al,
                           const SideEffectList& eff, std::size_t depth) {
    if (depth == 0) return Timeout{};
    if (std::holds_alternative<Exception>(al.acc)) {
      tag(PrettyRule::ExcList);
      return ListResult{al.acc, eff};
    }
    const auto& vals = std::get<std::vector<Value>>(al.acc);
    if (al.rest.empty()) {
      tag(PrettyRule::FinList);
      return ListResult{al.acc, eff};
    }
    tag(PrettyRule::StepList);
    ResultType head = eval_term(env, al.rest.front(), eff, depth - 1);
    if (std::holds_alternative<Timeout>(head)) return Timeout{};
    if (std::holds_alternative<Failure>(head)) return Failure{};
    const auto& hr = std::get<Result>(head);
    AList next{{al.rest.begin() + 1, al.rest.end()}, mk_result(hr.res, vals)};
    return eval_list(env, next, hr.eff, depth - 1);
  }

  // Convenience: wrap a source expression / expression pointer.
  ResultType eval_term(const Environment& env, const ExprPtr& e,
                       const SideEffectList& eff, std::size_t depth) {
    return eval_term(env, PrettyTerm{e}, eff, depth);
  }
};

}  // namespace

std::pair<ResultType, PrettyTrace> eval_pretty(const Environment& env,
                                               const PrettyTerm& t,
                                               const SideEffectList& eff,
                                               std::size_t depth_limit) {
  PrettyEval ev;
  ResultType r = ev.eval_term(env, t, eff, depth_limit);
  return {std::move(r), std::move(ev.trace)};
}

std::pair<ResultListType, PrettyTrace> eval_list_pretty(
    const Environment& env, const AList& al, const SideEffectList& eff,
    std::size_t depth_limit) {
  PrettyEval ev;
  ResultListType r = ev.eval_list(env, al, eff, depth_limit);
  return {std::move(r), std::move(ev.trace)};
}

}  // namespace mcerl
