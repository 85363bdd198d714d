#pragma once

#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "mcerl/domain.hpp"
#include "mcerl/env.hpp"

namespace mcerl {

// Rule tags of the pretty-big-step semantics. Every rule application
// appends its tag, so the trace mirrors the count of inference rules used.
enum class PrettyRule {
  Lit,
  Var,
  FunId,
  Fun,
  LetRec,
  App1,
  ExcApp1,
  FinApp1,
  ExcApp2,
  FinApp2,
  ExcApp2Badfun,
  ExcApp2Badarity,
  FinList,
  ExcList,
  StepList,
  Call,
  FinCall,
  ExcCall,
  Let,
  FinLet,
  ExcLet,
  Try,
  FinTry,
  CatchTry,
};

std::string_view pretty_rule_name(PrettyRule r);

using PrettyTrace = std::vector<PrettyRule>;

// Intermediate terms: they remember which sub-terms have been evaluated.
// AApp1/AApp2 follow the paper's application terms; ACall/ALet/ATry are the
// same transformation applied to the remaining multi-premise forms.
struct AApp1 {
  EvalOutcome fn;
  std::vector<ExprPtr> params;
};
struct AApp2 {
  Value fn;
  ValueListOutcome args;
};
struct ACall {
  std::string fname;
  ValueListOutcome args;
};
struct ALet {
  Var var;
  EvalOutcome bound;
  ExprPtr body;
};
struct ATry {
  EvalOutcome guarded;
  Var var;
  ExprPtr on_value;
  std::vector<Var> catch_vars;
  ExprPtr on_exc;
};

using AuxExpression = std::variant<AApp1, AApp2, ACall, ALet, ATry>;

struct AList {
  std::vector<ExprPtr> rest;
  ValueListOutcome acc;
};

using PrettyTerm = std::variant<ExprPtr, AuxExpression, AList>;

// Appends a value to the accumulated list, or switches it to the exception.
ValueListOutcome mk_result(const EvalOutcome& res,
                           const std::vector<Value>& vals);

// Expression judgment. Syntax-driven: at most one rule matches each term,
// except the AApp2 triple discriminated by closure-ness and arity. The
// depth limit decrements on every rule application; exhaustion gives
// Timeout. A bare list term with a value-list accumulator has no meaning in
// this judgment and yields Failure.
std::pair<ResultType, PrettyTrace> eval_pretty(const Environment& env,
                                               const PrettyTerm& t,
                                               const SideEffectList& eff,
                                               std::size_t depth_limit);

// List judgment.
std::pair<ResultListType, PrettyTrace> eval_list_pretty(
    const Environment& env, const AList& al, const SideEffectList& eff,
    std::size_t depth_limit);

}  // namespace mcerl
