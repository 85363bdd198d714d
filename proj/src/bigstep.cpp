#include "mcerl/bigstep.hpp"

#include <algorithm>
#include <cassert>
#include <random>

#include "mcerl/builtins.hpp"

namespace mcerl {

std::string_view rule_name(RuleName r) {
  switch (r) {
    case RuleName::Lit: return "Lit";
    case RuleName::Var: return "Var";
    case RuleName::FunId: return "FunId";
    case RuleName::Fun: return "Fun";
    case RuleName::Call: return "Call";
    case RuleName::App: return "App";
    case RuleName::Let: return "Let";
    case RuleName::LetRec: return "LetRec";
    case RuleName::Try: return "Try";
    case RuleName::Catch: return "Catch";
    case RuleName::AppExc1: return "AppExc1";
    case RuleName::AppExc2: return "AppExc2";
    case RuleName::AppExc3: return "AppExc3";
    case RuleName::AppExc4: return "AppExc4";
    case RuleName::CallExc: return "CallExc";
    case RuleName::LetExc: return "LetExc";
  }
  return "?";
}

std::optional<RuleName> rule_from_name(std::string_view name) {
  static const RuleName all[] = {
      RuleName::Lit,     RuleName::Var,     RuleName::FunId,
      RuleName::Fun,     RuleName::Call,    RuleName::App,
      RuleName::Let,     RuleName::LetRec,  RuleName::Try,
      RuleName::Catch,   RuleName::AppExc1, RuleName::AppExc2,
      RuleName::AppExc3, RuleName::AppExc4, RuleName::CallExc,
      RuleName::LetExc};
  for (RuleName r : all)
    if (rule_name(r) == name) return r;
  return std::nullopt;
}

const SideEffectList& nth_def(std::span<const SideEffectList> l,
                              const SideEffectList& def, std::size_t i) {
  assert(i <= l.size());
  if (i == 0) return def;
  return l[i - 1];
}

const SideEffectList& last_def(std::span<const SideEffectList> l,
                               const SideEffectList& def) {
  if (l.empty()) return def;
  return l.back();
}

// ---------------------------------------------------------------------------
// Derivation checking
// ---------------------------------------------------------------------------

namespace {

struct Checker {
  CheckResult res;

  bool fail(const std::string& path, std::string reason) {
    if (res.ok) res = CheckResult{false, path, std::move(reason)};
    return false;
  }

  // Does child claim exactly the configuration the parent rule requires?
  bool config_matches(const Derivation& child, const Environment& env,
                      const Expression& expr, const SideEffectList& eff_in,
                      const std::string& path) {
    if (!(child.env == env)) return fail(path, "premise environment mismatch");
    if (!expr_equal(*child.expr, expr))
      return fail(path, "premise expression mismatch");
    if (child.eff_in != eff_in)
      return fail(path, "premise initial trace mismatch");
    return true;
  }

  bool block_eval_all(std::span<const Derivation> children,
                      const Environment& env, std::span<const ExprPtr> es,
                      std::span<const Value> vals,
                      std::span<const SideEffectList> effs,
                      const SideEffectList& eff1, const std::string& path,
                      std::size_t child_offset) {
    if (es.size() != vals.size() || es.size() != effs.size() ||
        es.size() != children.size())
      return fail(path, "eval_all arity mismatch");
    for (std::size_t j = 0; j < es.size(); ++j) {
      std::string cpath =
          path + ".children[" + std::to_string(child_offset + j) + "]";
      const Derivation& c = children[j];
      if (!config_matches(c, env, *es[j], nth_def(effs, eff1, j), cpath))
        return false;
      if (!is_value(c.result) ||
          !value_equal(std::get<Value>(c.result), vals[j]))
        return fail(cpath, "eval_all element does not yield the listed value");
      if (c.eff_out != nth_def(effs, eff1, j + 1))
        return fail(cpath, "eval_all element trace mismatch");
      if (!check(c, cpath)) return false;
    }
    return true;
  }

  bool check(const Derivation& d, const std::string& path);
};

bool expect_children(Checker& ck, const Derivation& d, std::size_t n,
                     const std::string& path) {
  if (d.children.size() != n)
    return ck.fail(path, "expected " + std::to_string(n) + " premises, got " +
                             std::to_string(d.children.size()));
  return true;
}

bool expect_axiom_effects(Checker& ck, const Derivation& d,
                          const std::string& path) {
  if (d.eff_out != d.eff_in)
    return ck.fail(path, "axiom rule must leave the trace unchanged");
  return true;
}

bool result_is(Checker& ck, const Derivation& d, const EvalOutcome& expected,
               const std::string& path) {
  if (!outcome_equal(d.result, expected))
    return ck.fail(path, "conclusion result mismatch");
  return true;
}

bool aux_sized(Checker& ck, const Derivation& d, std::size_t n,
               bool want_index, const std::string& path) {
  if (!d.aux) return ck.fail(path, "rule requires aux vals/effs");
  if (d.aux->vals.size() != n || d.aux->effs.size() != n)
    return ck.fail(path, "aux vals/effs size mismatch");
  if (want_index != d.aux->index.has_value())
    return ck.fail(path, want_index ? "rule requires aux prefix index"
                                    : "rule must not carry a prefix index");
  return true;
}

bool Checker::check(const Derivation& d, const std::string& path) {
  switch (d.rule) {
    case RuleName::Lit: {
      const auto* x = std::get_if<ELit>(&d.expr->node);
      if (!x) return fail(path, "Lit rule requires a literal expression");
      if (!expect_children(*this, d, 0, path)) return false;
      if (!expect_axiom_effects(*this, d, path)) return false;
      return result_is(*this, d, Value::lit(x->lit), path);
    }
    case RuleName::Var: {
      const auto* x = std::get_if<EVar>(&d.expr->node);
      if (!x) return fail(path, "Var rule requires a variable expression");
      if (!expect_children(*this, d, 0, path)) return false;
      if (!expect_axiom_effects(*this, d, path)) return false;
      return result_is(*this, d, get_value(d.env, EnvKey{x->name}), path);
    }
    case RuleName::FunId: {
      const auto* x = std::get_if<EFunId>(&d.expr->node);
      if (!x) return fail(path, "FunId rule requires a fun-id expression");
      if (!expect_children(*this, d, 0, path)) return false;
      if (!expect_axiom_effects(*this, d, path)) return false;
      return result_is(*this, d, get_value(d.env, EnvKey{x->fid}), path);
    }
    case RuleName::Fun: {
      const auto* x = std::get_if<EFun>(&d.expr->node);
      if (!x) return fail(path, "Fun rule requires a fun expression");
      if (!expect_children(*this, d, 0, path)) return false;
      if (!expect_axiom_effects(*this, d, path)) return false;
      return result_is(
          *this, d, Value::closure({d.env, {}, x->params, x->body}), path);
    }
    case RuleName::Call: {
      const auto* x = std::get_if<ECall>(&d.expr->node);
      if (!x) return fail(path, "Call rule requires a call expression");
      const std::size_t n = x->params.size();
      if (!aux_sized(*this, d, n, false, path)) return false;
      if (!expect_children(*this, d, n, path)) return false;
      if (!block_eval_all(d.children, d.env, x->params, d.aux->vals,
                          d.aux->effs, d.eff_in, path, 0))
        return false;
      auto [res, eff2] = eval_builtin(x->fname, d.aux->vals,
                                      last_def(d.aux->effs, d.eff_in));
      if (d.eff_out != eff2) return fail(path, "builtin trace mismatch");
      return result_is(*this, d, res, path);
    }
    case RuleName::CallExc: {
      const auto* x = std::get_if<ECall>(&d.expr->node);
      if (!x) return fail(path, "CallExc rule requires a call expression");
      if (!d.aux || !d.aux->index)
        return fail(path, "CallExc requires aux prefix index");
      const std::size_t i = *d.aux->index;
      if (i >= x->params.size())
        return fail(path, "prefix index out of range");
      if (!aux_sized(*this, d, i, true, path)) return false;
      if (!expect_children(*this, d, i + 1, path)) return false;
      if (!block_eval_all({d.children.data(), i}, d.env,
                          {x->params.data(), i}, d.aux->vals, d.aux->effs,
                          d.eff_in, path, 0))
        return false;
      const Derivation& failing = d.children[i];
      std::string fpath = path + ".children[" + std::to_string(i) + "]";
      if (!config_matches(failing, d.env, *x->params[i],
                          last_def(d.aux->effs, d.eff_in), fpath))
        return false;
      if (!is_exception(failing.result))
        return fail(fpath, "failing parameter must raise");
      if (!check(failing, fpath)) return false;
      if (d.eff_out != failing.eff_out)
        return fail(path, "conclusion trace mismatch");
      return result_is(*this, d, failing.result, path);
    }
    case RuleName::App: {
      const auto* x = std::get_if<EApp>(&d.expr->node);
      if (!x) return fail(path, "App rule requires an apply expression");
      const std::size_t n = x->params.size();
      if (!aux_sized(*this, d, n, false, path)) return false;
      if (!expect_children(*this, d, n + 2, path)) return false;
      const Derivation& fnd = d.children[0];
      std::string fnpath = path + ".children[0]";
      if (!config_matches(fnd, d.env, *x->fn, d.eff_in, fnpath)) return false;
      if (!is_value(fnd.result) ||
          !std::get<Value>(fnd.result).is_closure())
        return fail(fnpath, "function expression must yield a closure");
      if (!check(fnd, fnpath)) return false;
      const Closure& c = std::get<Value>(fnd.result).as_closure();
      if (!block_eval_all({d.children.data() + 1, n}, d.env, x->params,
                          d.aux->vals, d.aux->effs, fnd.eff_out, path, 1))
        return false;
      if (c.params.size() != d.aux->vals.size())
        return fail(path, "App requires matching arity");
      const Derivation& bodyd = d.children[n + 1];
      std::string bpath = path + ".children[" + std::to_string(n + 1) + "]";
      Environment benv = append_vars_to_env(c.params, d.aux->vals,
                                            get_env(c.ref, c.ext));
      if (!config_matches(bodyd, benv, *c.body,
                          last_def(d.aux->effs, fnd.eff_out), bpath))
        return false;
      if (!check(bodyd, bpath)) return false;
      if (d.eff_out != bodyd.eff_out)
        return fail(path, "conclusion trace mismatch");
      return result_is(*this, d, bodyd.result, path);
    }
    case RuleName::AppExc1:
    case RuleName::AppExc2: {
      const auto* x = std::get_if<EApp>(&d.expr->node);
      if (!x) return fail(path, "rule requires an apply expression");
      const std::size_t n = x->params.size();
      if (!aux_sized(*this, d, n, false, path)) return false;
      if (!expect_children(*this, d, n + 1, path)) return false;
      const Derivation& fnd = d.children[0];
      std::string fnpath = path + ".children[0]";
      if (!config_matches(fnd, d.env, *x->fn, d.eff_in, fnpath)) return false;
      if (!is_value(fnd.result))
        return fail(fnpath, "function expression must yield a value");
      if (!check(fnd, fnpath)) return false;
      const Value& v = std::get<Value>(fnd.result);
      if (!block_eval_all({d.children.data() + 1, n}, d.env, x->params,
                          d.aux->vals, d.aux->effs, fnd.eff_out, path, 1))
        return false;
      if (d.rule == RuleName::AppExc1) {
        if (v.is_closure())
          return fail(path, "AppExc1 requires a non-closure value");
        if (!result_is(*this, d, EvalOutcome{make_badfun(v)}, path))
          return false;
      } else {
        if (!v.is_closure())
          return fail(path, "AppExc2 requires a closure value");
        if (v.as_closure().params.size() == d.aux->vals.size())
          return fail(path, "AppExc2 requires an arity mismatch");
        if (!result_is(*this, d, EvalOutcome{make_badarity(v)}, path))
          return false;
      }
      if (d.eff_out != last_def(d.aux->effs, fnd.eff_out))
        return fail(path, "conclusion trace mismatch");
      return true;
    }
    case RuleName::AppExc3: {
      const auto* x = std::get_if<EApp>(&d.expr->node);
      if (!x) return fail(path, "AppExc3 rule requires an apply expression");
      if (!expect_children(*this, d, 1, path)) return false;
      const Derivation& fnd = d.children[0];
      std::string fnpath = path + ".children[0]";
      if (!config_matches(fnd, d.env, *x->fn, d.eff_in, fnpath)) return false;
      if (!is_exception(fnd.result))
        return fail(fnpath, "function expression must raise");
      if (!check(fnd, fnpath)) return false;
      if (d.eff_out != fnd.eff_out)
        return fail(path, "conclusion trace mismatch");
      return result_is(*this, d, fnd.result, path);
    }
    case RuleName::AppExc4: {
      const auto* x = std::get_if<EApp>(&d.expr->node);
      if (!x) return fail(path, "AppExc4 rule requires an apply expression");
      if (!d.aux || !d.aux->index)
        return fail(path, "AppExc4 requires aux prefix index");
      const std::size_t i = *d.aux->index;
      if (i >= x->params.size())
        return fail(path, "prefix index out of range");
      if (!aux_sized(*this, d, i, true, path)) return false;
      if (!expect_children(*this, d, i + 2, path)) return false;
      const Derivation& fnd = d.children[0];
      std::string fnpath = path + ".children[0]";
      if (!config_matches(fnd, d.env, *x->fn, d.eff_in, fnpath)) return false;
      if (!is_value(fnd.result))
        return fail(fnpath, "function expression must yield a value");
      if (!check(fnd, fnpath)) return false;
      if (!block_eval_all({d.children.data() + 1, i}, d.env,
                          {x->params.data(), i}, d.aux->vals, d.aux->effs,
                          fnd.eff_out, path, 1))
        return false;
      const Derivation& failing = d.children[i + 1];
      std::string fpath = path + ".children[" + std::to_string(i + 1) + "]";
      if (!config_matches(failing, d.env, *x->params[i],
                          last_def(d.aux->effs, fnd.eff_out), fpath))
        return false;
      if (!is_exception(failing.result))
        return fail(fpath, "failing parameter must raise");
      if (!check(failing, fpath)) return false;
      if (d.eff_out != failing.eff_out)
        return fail(path, "conclusion trace mismatch");
      return result_is(*this, d, failing.result, path);
    }
    case RuleName::Let:
    case RuleName::LetExc: {
      const auto* x = std::get_if<ELet>(&d.expr->node);
      if (!x) return fail(path, "rule requires a let expression");
      const bool exc = d.rule == RuleName::LetExc;
      if (!expect_children(*this, d, exc ? 1 : 2, path)) return false;
      const Derivation& bd = d.children[0];
      std::string bpath = path + ".children[0]";
      if (!config_matches(bd, d.env, *x->bound, d.eff_in, bpath))
        return false;
      if (!check(bd, bpath)) return false;
      if (exc) {
        if (!is_exception(bd.result))
          return fail(bpath, "LetExc requires the binding to raise");
        if (d.eff_out != bd.eff_out)
          return fail(path, "conclusion trace mismatch");
        return result_is(*this, d, bd.result, path);
      }
      if (!is_value(bd.result))
        return fail(bpath, "Let requires the binding to yield a value");
      const Derivation& bodyd = d.children[1];
      std::string bodypath = path + ".children[1]";
      Environment benv =
          insert_value(d.env, EnvKey{x->var}, std::get<Value>(bd.result));
      if (!config_matches(bodyd, benv, *x->body, bd.eff_out, bodypath))
        return false;
      if (!check(bodyd, bodypath)) return false;
      if (d.eff_out != bodyd.eff_out)
        return fail(path, "conclusion trace mismatch");
      return result_is(*this, d, bodyd.result, path);
    }
    case RuleName::LetRec: {
      const auto* x = std::get_if<ELetRec>(&d.expr->node);
      if (!x) return fail(path, "LetRec rule requires a letrec expression");
      if (!expect_children(*this, d, 1, path)) return false;
      const Derivation& bd = d.children[0];
      std::string bpath = path + ".children[0]";
      const FunctionIdentifier fids[] = {x->fid};
      const std::vector<Var> paramss[] = {x->params};
      const ExprPtr bodies[] = {x->fun_body};
      Environment benv = append_funs_to_env(fids, paramss, bodies, d.env);
      if (!config_matches(bd, benv, *x->cont, d.eff_in, bpath)) return false;
      if (!check(bd, bpath)) return false;
      if (d.eff_out != bd.eff_out)
        return fail(path, "conclusion trace mismatch");
      return result_is(*this, d, bd.result, path);
    }
    case RuleName::Try:
    case RuleName::Catch: {
      const auto* x = std::get_if<ETry>(&d.expr->node);
      if (!x) return fail(path, "rule requires a try expression");
      if (!expect_children(*this, d, 2, path)) return false;
      const Derivation& gd = d.children[0];
      std::string gpath = path + ".children[0]";
      if (!config_matches(gd, d.env, *x->guarded, d.eff_in, gpath))
        return false;
      if (!check(gd, gpath)) return false;
      const Derivation& kd = d.children[1];
      std::string kpath = path + ".children[1]";
      Environment kenv;
      const Expression* kexpr = nullptr;
      if (d.rule == RuleName::Try) {
        if (!is_value(gd.result))
          return fail(gpath, "Try requires the guarded expression to yield");
        kenv = insert_value(d.env, EnvKey{x->var}, std::get<Value>(gd.result));
        kexpr = x->on_value.get();
      } else {
        if (!is_exception(gd.result))
          return fail(gpath, "Catch requires the guarded expression to raise");
        const Exception& ex = std::get<Exception>(gd.result);
        const Value vals[] = {exclass_to_value(ex.cls), ex.reason1,
                              ex.reason2};
        kenv = append_try_vars_to_env(x->catch_vars, vals, d.env);
        kexpr = x->on_exc.get();
      }
      if (!config_matches(kd, kenv, *kexpr, gd.eff_out, kpath)) return false;
      if (!check(kd, kpath)) return false;
      if (d.eff_out != kd.eff_out)
        return fail(path, "conclusion trace mismatch");
      return result_is(*this, d, kd.result, path);
    }
  }
  return fail(path, "unknown rule");
}

}  // namespace

bool check_eval_all(std::span<const Derivation> children,
                    const Environment& env, std::span<const ExprPtr> es,
                    std::span<const Value> vals,
                    std::span<const SideEffectList> effs,
                    const SideEffectList& eff1) {
  Checker ck;
  return ck.block_eval_all(children, env, es, vals, effs, eff1, "block", 0);
}

bool check_eval_prefix(std::span<const Derivation> children,
                       const Environment& env, std::span<const ExprPtr> es,
                       std::span<const Value> vals, std::size_t i,
                       std::span<const SideEffectList> effs,
                       const SideEffectList& eff1) {
  if (i >= es.size()) return false;
  if (vals.size() != i || effs.size() != i || children.size() != i)
    return false;
  Checker ck;
  return ck.block_eval_all(children, env, es.first(i), vals, effs, eff1,
                           "block", 0);
}

CheckResult check_derivation(const Derivation& d) {
  Checker ck;
  if (ck.check(d, "root")) return CheckResult{};
  return ck.res;
}

// ---------------------------------------------------------------------------
// Proof search
// ---------------------------------------------------------------------------

RuleOrder RuleOrder::standard() {
  return RuleOrder{
      {RuleName::App, RuleName::AppExc1, RuleName::AppExc2, RuleName::AppExc3,
       RuleName::AppExc4},
      {RuleName::Call, RuleName::CallExc},
      {RuleName::Let, RuleName::LetExc},
      {RuleName::Try, RuleName::Catch},
  };
}

RuleOrder RuleOrder::shuffled(std::uint64_t seed) {
  RuleOrder order = standard();
  std::mt19937_64 rng(seed);
  std::shuffle(order.app_rules.begin(), order.app_rules.end(), rng);
  std::shuffle(order.call_rules.begin(), order.call_rules.end(), rng);
  std::shuffle(order.let_rules.begin(), order.let_rules.end(), rng);
  std::shuffle(order.try_rules.begin(), order.try_rules.end(), rng);
  return order;
}

namespace {

struct Searcher {
  const RuleOrder& order;

  struct ParamsOut {
    enum class Kind { AllValues, Exc, Depth, NoDeriv } kind;
    std::vector<Derivation> derivs;  // value derivations, left to right
    std::vector<Value> vals;
    std::vector<SideEffectList> effs;
    std::optional<Derivation> failing;  // exception derivation (Kind::Exc)
    std::size_t exc_index = 0;
  };

  // Left-to-right recursive search for the list premises; discharges the
  // existential vals/effs vectors of eval_all / eval_prefix mechanically.
  ParamsOut eval_params(const Environment& env, std::span<const ExprPtr> es,
                        const SideEffectList& eff0, std::size_t depth) {
    ParamsOut out{ParamsOut::Kind::AllValues, {}, {}, {}, std::nullopt, 0};
    const SideEffectList* cur = &eff0;
    for (std::size_t j = 0; j < es.size(); ++j) {
      SearchOutcome sub = run(env, es[j], *cur, depth);
      if (!sub.found()) {
        out.kind = sub.kind == SearchOutcome::Kind::DepthExhausted
                       ? ParamsOut::Kind::Depth
                       : ParamsOut::Kind::NoDeriv;
        return out;
      }
      Derivation d = std::move(*sub.tree);
      if (is_exception(d.result)) {
        out.kind = ParamsOut::Kind::Exc;
        out.exc_index = j;
        out.failing = std::move(d);
        return out;
      }
      out.vals.push_back(std::get<Value>(d.result));
      out.effs.push_back(d.eff_out);
      out.derivs.push_back(std::move(d));
      cur = &out.effs.back();
    }
    return out;
  }

  // Cached premise evaluations for one configuration, shared by all rule
  // attempts on that configuration.
  struct Ctx {
    const Environment& env;
    const ExprPtr& expr;
    const SideEffectList& eff;
    std::size_t depth;  // >= 1 at rule-attempt time
    Searcher& searcher;
    bool depth_hit = false;

    std::optional<SearchOutcome> first_;  // fn / binding / guarded premise
    std::optional<ParamsOut> params_;

    const SearchOutcome& first(const ExprPtr& e) {
      if (!first_) {
        first_ = searcher.run(env, e, eff, depth - 1);
        if (first_->kind == SearchOutcome::Kind::DepthExhausted)
          depth_hit = true;
      }
      return *first_;
    }

    const ParamsOut& params(std::span<const ExprPtr> es,
                            const SideEffectList& from) {
      if (!params_) {
        params_ = searcher.eval_params(env, es, from, depth - 1);
        if (params_->kind == ParamsOut::Kind::Depth) depth_hit = true;
      }
      return *params_;
    }
  };

  Derivation node(RuleName rule, Ctx& ctx, EvalOutcome result,
                  SideEffectList eff_out, std::vector<Derivation> children,
                  std::optional<DerivAux> aux = std::nullopt) {
    return Derivation{rule,     ctx.env,
                      ctx.expr, ctx.eff,
                      std::move(result), std::move(eff_out),
                      std::move(children), std::move(aux)};
  }

  // One rule attempt against the cached premises. nullopt means the rule is
  // not instantiable here (or a premise hit the depth limit, recorded in
  // ctx.depth_hit).
  std::optional<Derivation> try_rule(RuleName rule, Ctx& ctx) {
    const Expression& e = *ctx.expr;
    switch (rule) {
      case RuleName::Lit: {
        const auto* x = std::get_if<ELit>(&e.node);
        if (!x) return std::nullopt;
        return node(rule, ctx, Value::lit(x->lit), ctx.eff, {});
      }
      case RuleName::Var: {
        const auto* x = std::get_if<EVar>(&e.node);
        if (!x) return std::nullopt;
        return node(rule, ctx, get_value(ctx.env, EnvKey{x->name}), ctx.eff,
                    {});
      }
      case RuleName::FunId: {
        const auto* x = std::get_if<EFunId>(&e.node);
        if (!x) return std::nullopt;
        return node(rule, ctx, get_value(ctx.env, EnvKey{x->fid}), ctx.eff,
                    {});
      }
      case RuleName::Fun: {
        const auto* x = std::get_if<EFun>(&e.node);
        if (!x) return std::nullopt;
        return node(rule, ctx,
                    Value::closure({ctx.env, {}, x->params, x->body}),
                    ctx.eff, {});
      }
      case RuleName::Call: {
        const auto* x = std::get_if<ECall>(&e.node);
        if (!x) return std::nullopt;
        const ParamsOut& ps = ctx.params(x->params, ctx.eff);
        if (ps.kind != ParamsOut::Kind::AllValues) return std::nullopt;
        auto [res, eff2] =
            eval_builtin(x->fname, ps.vals, last_def(ps.effs, ctx.eff));
        return node(rule, ctx, std::move(res), std::move(eff2), ps.derivs,
                    DerivAux{ps.vals, ps.effs, std::nullopt});
      }
      case RuleName::CallExc: {
        const auto* x = std::get_if<ECall>(&e.node);
        if (!x) return std::nullopt;
        const ParamsOut& ps = ctx.params(x->params, ctx.eff);
        if (ps.kind != ParamsOut::Kind::Exc) return std::nullopt;
        std::vector<Derivation> children = ps.derivs;
        children.push_back(*ps.failing);
        return node(rule, ctx, ps.failing->result, ps.failing->eff_out,
                    std::move(children),
                    DerivAux{ps.vals, ps.effs, ps.exc_index});
      }
      case RuleName::App:
      case RuleName::AppExc1:
      case RuleName::AppExc2:
      case RuleName::AppExc4: {
        const auto* x = std::get_if<EApp>(&e.node);
        if (!x) return std::nullopt;
        const SearchOutcome& fn = ctx.first(x->fn);
        if (!fn.found() || !is_value(fn.tree->result)) return std::nullopt;
        const Value& v = std::get<Value>(fn.tree->result);
        const ParamsOut& ps = ctx.params(x->params, fn.tree->eff_out);
        if (rule == RuleName::AppExc4) {
          if (ps.kind != ParamsOut::Kind::Exc) return std::nullopt;
          std::vector<Derivation> children;
          children.push_back(*fn.tree);
          for (const auto& d : ps.derivs) children.push_back(d);
          children.push_back(*ps.failing);
          return node(rule, ctx, ps.failing->result, ps.failing->eff_out,
                      std::move(children),
                      DerivAux{ps.vals, ps.effs, ps.exc_index});
        }
        if (ps.kind != ParamsOut::Kind::AllValues) return std::nullopt;
        const SideEffectList& eff2 = last_def(ps.effs, fn.tree->eff_out);
        if (rule == RuleName::AppExc1) {
          if (v.is_closure()) return std::nullopt;
          std::vector<Derivation> children;
          children.push_back(*fn.tree);
          for (const auto& d : ps.derivs) children.push_back(d);
          return node(rule, ctx, make_badfun(v), eff2, std::move(children),
                      DerivAux{ps.vals, ps.effs, std::nullopt});
        }
        if (!v.is_closure()) return std::nullopt;
        const Closure& c = v.as_closure();
        const bool arity_ok = c.params.size() == ps.vals.size();
        if (rule == RuleName::AppExc2) {
          if (arity_ok) return std::nullopt;
          std::vector<Derivation> children;
          children.push_back(*fn.tree);
          for (const auto& d : ps.derivs) children.push_back(d);
          return node(rule, ctx, make_badarity(v), eff2, std::move(children),
                      DerivAux{ps.vals, ps.effs, std::nullopt});
        }
        // App
        if (!arity_ok) return std::nullopt;
        Environment benv =
            append_vars_to_env(c.params, ps.vals, get_env(c.ref, c.ext));
        SearchOutcome body = run(benv, c.body, eff2, ctx.depth - 1);
        if (!body.found()) {
          if (body.kind == SearchOutcome::Kind::DepthExhausted)
            ctx.depth_hit = true;
          return std::nullopt;
        }
        std::vector<Derivation> children;
        children.push_back(*fn.tree);
        for (const auto& d : ps.derivs) children.push_back(d);
        children.push_back(*body.tree);
        return node(rule, ctx, body.tree->result, body.tree->eff_out,
                    std::move(children),
                    DerivAux{ps.vals, ps.effs, std::nullopt});
      }
      case RuleName::AppExc3: {
        const auto* x = std::get_if<EApp>(&e.node);
        if (!x) return std::nullopt;
        const SearchOutcome& fn = ctx.first(x->fn);
        if (!fn.found() || !is_exception(fn.tree->result)) return std::nullopt;
        return node(rule, ctx, fn.tree->result, fn.tree->eff_out,
                    {*fn.tree});
      }
      case RuleName::Let:
      case RuleName::LetExc: {
        const auto* x = std::get_if<ELet>(&e.node);
        if (!x) return std::nullopt;
        const SearchOutcome& bound = ctx.first(x->bound);
        if (!bound.found()) return std::nullopt;
        if (rule == RuleName::LetExc) {
          if (!is_exception(bound.tree->result)) return std::nullopt;
          return node(rule, ctx, bound.tree->result, bound.tree->eff_out,
                      {*bound.tree});
        }
        if (!is_value(bound.tree->result)) return std::nullopt;
        Environment benv = insert_value(ctx.env, EnvKey{x->var},
                                        std::get<Value>(bound.tree->result));
        SearchOutcome body =
            run(benv, x->body, bound.tree->eff_out, ctx.depth - 1);
        if (!body.found()) {
          if (body.kind == SearchOutcome::Kind::DepthExhausted)
            ctx.depth_hit = true;
          return std::nullopt;
        }
        return node(rule, ctx, body.tree->result, body.tree->eff_out,
                    {*bound.tree, *body.tree});
      }
      case RuleName::LetRec: {
        const auto* x = std::get_if<ELetRec>(&e.node);
        if (!x) return std::nullopt;
        const FunctionIdentifier fids[] = {x->fid};
        const std::vector<Var> paramss[] = {x->params};
        const ExprPtr bodies[] = {x->fun_body};
        Environment benv = append_funs_to_env(fids, paramss, bodies, ctx.env);
        SearchOutcome body = run(benv, x->cont, ctx.eff, ctx.depth - 1);
        if (!body.found()) {
          if (body.kind == SearchOutcome::Kind::DepthExhausted)
            ctx.depth_hit = true;
          return std::nullopt;
        }
        return node(rule, ctx, body.tree->result, body.tree->eff_out,
                    {*body.tree});
      }
      case RuleName::Try:
      case RuleName::Catch: {
        const auto* x = std::get_if<ETry>(&e.node);
        if (!x) return std::nullopt;
        const SearchOutcome& guarded = ctx.first(x->guarded);
        if (!guarded.found()) return std::nullopt;
        Environment kenv;
        const ExprPtr* kexpr = nullptr;
        if (rule == RuleName::Try) {
          if (!is_value(guarded.tree->result)) return std::nullopt;
          kenv = insert_value(ctx.env, EnvKey{x->var},
                              std::get<Value>(guarded.tree->result));
          kexpr = &x->on_value;
        } else {
          if (!is_exception(guarded.tree->result)) return std::nullopt;
          const Exception& ex = std::get<Exception>(guarded.tree->result);
          const Value vals[] = {exclass_to_value(ex.cls), ex.reason1,
                                ex.reason2};
          kenv = append_try_vars_to_env(x->catch_vars, vals, ctx.env);
          kexpr = &x->on_exc;
        }
        SearchOutcome k = run(kenv, *kexpr, guarded.tree->eff_out,
                              ctx.depth - 1);
        if (!k.found()) {
          if (k.kind == SearchOutcome::Kind::DepthExhausted)
            ctx.depth_hit = true;
          return std::nullopt;
        }
        return node(rule, ctx, k.tree->result, k.tree->eff_out,
                    {*guarded.tree, *k.tree});
      }
    }
    return std::nullopt;
  }

  std::span<const RuleName> candidates(const Expression& e) const {
    static const RuleName lit[] = {RuleName::Lit};
    static const RuleName var_[] = {RuleName::Var};
    static const RuleName funid[] = {RuleName::FunId};
    static const RuleName fn[] = {RuleName::Fun};
    static const RuleName letrec_[] = {RuleName::LetRec};
    return std::visit(
        overloaded{
            [&](const ELit&) -> std::span<const RuleName> { return lit; },
            [&](const EVar&) -> std::span<const RuleName> { return var_; },
            [&](const EFunId&) -> std::span<const RuleName> { return funid; },
            [&](const EFun&) -> std::span<const RuleName> { return fn; },
            [&](const ECall&) -> std::span<const RuleName> {
              return order.call_rules;
            },
            [&](const EApp&) -> std::span<const RuleName> {
              return order.app_rules;
            },
            [&](const ELet&) -> std::span<const RuleName> {
              return order.let_rules;
            },
            [&](const ELetRec&) -> std::span<const RuleName> {
              return letrec_;
            },
            [&](const ETry&) -> std::span<const RuleName> {
              return order.try_rules;
            },
        },
        e.node);
  }

  SearchOutcome run(const Environment& env, const ExprPtr& expr,
                    const SideEffectList& eff, std::size_t depth) {
    if (depth == 0)
      return SearchOutcome{SearchOutcome::Kind::DepthExhausted, std::nullopt};
    Ctx ctx{env, expr, eff, depth, *this, false, std::nullopt, std::nullopt};
    for (RuleName rule : candidates(*expr)) {
      if (auto d = try_rule(rule, ctx))
        return SearchOutcome{SearchOutcome::Kind::Found, std::move(d)};
    }
    return SearchOutcome{ctx.depth_hit ? SearchOutcome::Kind::DepthExhausted
                                       : SearchOutcome::Kind::NoDerivation,
                         std::nullopt};
  }
};

}  // namespace

SearchOutcome search(const Environment& env, const ExprPtr& expr,
                     const SideEffectList& eff_in, std::size_t depth_limit,
                     const RuleOrder& order) {
  assert(depth_limit >= 1);
  Searcher s{order};
  return s.run(env, expr, eff_in, depth_limit);
}

std::vector<Derivation> instantiate_all(const Environment& env,
                                        const ExprPtr& expr,
                                        const SideEffectList& eff_in,
                                        std::size_t depth_limit) {
  static const RuleName all[] = {
      RuleName::Lit,     RuleName::Var,     RuleName::FunId,
      RuleName::Fun,     RuleName::Call,    RuleName::App,
      RuleName::Let,     RuleName::LetRec,  RuleName::Try,
      RuleName::Catch,   RuleName::AppExc1, RuleName::AppExc2,
      RuleName::AppExc3, RuleName::AppExc4, RuleName::CallExc,
      RuleName::LetExc};
  RuleOrder order = RuleOrder::standard();
  Searcher s{order};
  std::vector<Derivation> found;
  if (depth_limit == 0) return found;
  Searcher::Ctx ctx{env, expr, eff_in, depth_limit, s, false, std::nullopt,
                    std::nullopt};
  for (RuleName rule : all) {
    if (auto d = s.try_rule(rule, ctx)) found.push_back(std::move(*d));
  }
  return found;
}

}  // namespace mcerl
