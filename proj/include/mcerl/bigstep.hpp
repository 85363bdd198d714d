#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mcerl/domain.hpp"
#include "mcerl/env.hpp"

namespace mcerl {

// The sixteen rules of the traditional relational big-step semantics.
enum class RuleName {
  Lit,
  Var,
  FunId,
  Fun,
  Call,
  App,
  Let,
  LetRec,
  Try,
  Catch,
  AppExc1,  // badfun: applied value is not a closure
  AppExc2,  // badarity: parameter count mismatch
  AppExc3,  // the function expression raised
  AppExc4,  // a parameter raised
  CallExc,
  LetExc,
};

std::string_view rule_name(RuleName r);
std::optional<RuleName> rule_from_name(std::string_view name);

// The existential vals/effs vectors of eval_all / eval_prefix, and the
// prefix index i where a rule uses eval_prefix.
struct DerivAux {
  std::vector<Value> vals;
  std::vector<SideEffectList> effs;
  std::optional<std::size_t> index;
};

// One node of a big-step derivation tree: an instance of
//   <env, expr, eff_in>  ->  <result, eff_out>
// with children in premise order.
struct Derivation {
  RuleName rule;
  Environment env;
  ExprPtr expr;
  SideEffectList eff_in;
  EvalOutcome result;
  SideEffectList eff_out;
  std::vector<Derivation> children;
  std::optional<DerivAux> aux;
};

// nth_def l default i: the default for i = 0, l[i-1] otherwise.
// pre: i <= l.size().
const SideEffectList& nth_def(std::span<const SideEffectList> l,
                              const SideEffectList& def, std::size_t i);

// Coq's last with default: l.back() or def when l is empty.
const SideEffectList& last_def(std::span<const SideEffectList> l,
                               const SideEffectList& def);

// True iff es, vals, effs have equal length and children[j] validly derives
// <env, es[j], nth_def(effs, eff1, j)> -> <inl vals[j], nth_def(effs, eff1, j+1)>.
bool check_eval_all(std::span<const Derivation> children,
                    const Environment& env, std::span<const ExprPtr> es,
                    std::span<const Value> vals,
                    std::span<const SideEffectList> effs,
                    const SideEffectList& eff1);

// Same for the first i elements only; requires i < es.size().
bool check_eval_prefix(std::span<const Derivation> children,
                       const Environment& env, std::span<const ExprPtr> es,
                       std::span<const Value> vals, std::size_t i,
                       std::span<const SideEffectList> effs,
                       const SideEffectList& eff1);

struct CheckResult {
  bool ok = true;
  std::string path;    // node where the check failed, e.g. "root.children[1]"
  std::string reason;  // what was violated there
  explicit operator bool() const { return ok; }
};

// Independent validity check: the node instantiates its rule exactly and
// all children do recursively. Shares only the domain operations with the
// searcher, no rule-instantiation code.
CheckResult check_derivation(const Derivation& d);

// Rule-attempt order per expression head. The standard order tries value
// rules first, then exception rules in their figure order; permutations of
// it feed the determinism suite.
struct RuleOrder {
  std::vector<RuleName> app_rules;
  std::vector<RuleName> call_rules;
  std::vector<RuleName> let_rules;
  std::vector<RuleName> try_rules;

  static RuleOrder standard();
  static RuleOrder shuffled(std::uint64_t seed);
};

struct SearchOutcome {
  enum class Kind { Found, DepthExhausted, NoDerivation };
  Kind kind;
  std::optional<Derivation> tree;  // present iff kind == Found

  bool found() const { return kind == Kind::Found; }
};

// Backtracking proof search for a derivation of <env, expr, eff_in>.
// depth_limit bounds the tree height; list premises are computed
// left-to-right recursively. pre: depth_limit >= 1.
SearchOutcome search(const Environment& env, const ExprPtr& expr,
                     const SideEffectList& eff_in, std::size_t depth_limit,
                     const RuleOrder& order = RuleOrder::standard());

// Every rule instantiation that succeeds for this configuration (premises
// found by the deterministic searcher). Used to hunt for dual derivations.
std::vector<Derivation> instantiate_all(const Environment& env,
                                        const ExprPtr& expr,
                                        const SideEffectList& eff_in,
                                        std::size_t depth_limit);

}  // namespace mcerl
