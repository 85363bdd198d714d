#include "mcerl/difftest.hpp"

#include <cassert>

#include "mcerl/builtins.hpp"

namespace mcerl {

EngineOutcomes run_engines(const ExprPtr& program, Clock fuel,
                           std::size_t depth) {
  EngineOutcomes out{
      eval_fbos_expr(fuel, Environment{}, *program, {}),
      search(Environment{}, program, {}, depth),
      {},
      {},
  };
  auto [pres, ptrace] =
      eval_pretty(Environment{}, PrettyTerm{program}, {}, depth);
  out.pretty = std::move(pres);
  out.pretty_trace = std::move(ptrace);
  return out;
}

namespace {

bool terminal(const ResultType& r) {
  return std::holds_alternative<Result>(r);
}

std::string class_of(const ResultType& r) {
  if (std::holds_alternative<Result>(r)) return "result";
  if (std::holds_alternative<Timeout>(r)) return "timeout";
  return "failure";
}

std::string class_of(const SearchOutcome& s) {
  switch (s.kind) {
    case SearchOutcome::Kind::Found: return "found";
    case SearchOutcome::Kind::DepthExhausted: return "depth-exhausted";
    case SearchOutcome::Kind::NoDerivation: return "no-derivation";
  }
  return "?";
}

}  // namespace

Verdict agree(const EngineOutcomes& o) {
  const bool fbs_term = terminal(o.fbs);
  const bool pretty_term = terminal(o.pretty);
  const bool bs_found = o.bigstep.found();

  if (fbs_term && pretty_term && bs_found) {
    const auto& rf = std::get<Result>(o.fbs);
    const auto& rp = std::get<Result>(o.pretty);
    const Derivation& d = *o.bigstep.tree;
    if (!outcome_equal(rf.res, rp.res))
      return {VerdictKind::Disagree, "pretty result differs from fbs"};
    if (rf.eff != rp.eff)
      return {VerdictKind::Disagree, "pretty trace differs from fbs"};
    if (!outcome_equal(rf.res, d.result))
      return {VerdictKind::Disagree, "bigstep result differs from fbs"};
    if (rf.eff != d.eff_out)
      return {VerdictKind::Disagree, "bigstep trace differs from fbs"};
    return {VerdictKind::Agree, ""};
  }

  if (std::holds_alternative<Timeout>(o.fbs) &&
      std::holds_alternative<Timeout>(o.pretty) &&
      o.bigstep.kind == SearchOutcome::Kind::DepthExhausted) {
    return {VerdictKind::AllDiverged, ""};
  }

  return {VerdictKind::Disagree, "mixed outcomes: fbs=" + class_of(o.fbs) +
                                     " bigstep=" + class_of(o.bigstep) +
                                     " pretty=" + class_of(o.pretty)};
}

DiffReport run_diff(const ExprPtr& program, Clock fuel, std::size_t depth) {
  EngineOutcomes outcomes = run_engines(program, fuel, depth);
  Verdict verdict = agree(outcomes);
  return DiffReport{program, std::move(outcomes), std::move(verdict)};
}

bool check_monotone(const ExprPtr& e, Clock max_clock) {
  assert(max_clock >= 1);
  for (Clock c = 1; c <= max_clock; ++c) {
    ResultType r = eval_program(*e, c);
    if (!std::holds_alternative<Result>(r)) continue;
    for (Clock c2 = c + 1; c2 <= max_clock; ++c2) {
      if (!result_equal(r, eval_program(*e, c2))) return false;
    }
    return true;
  }
  return true;  // no clock in range succeeds
}

bool check_equiv_wrap(const ExprPtr& e, Clock clock) {
  std::set<Var> avoid;
  for (const auto& name : free_names(*e))
    if (name.index() == 0) avoid.insert(std::get<Var>(name));
  Var x = fresh_var(avoid);
  ExprPtr wrapped = let(x, fun({}, e), apply(var(x), {}));

  ResultType plain = eval_program(*e, clock);
  ResultType wrap = eval_program(*wrapped, clock + 3);
  if (std::holds_alternative<Timeout>(plain))
    return std::holds_alternative<Timeout>(wrap);
  if (!std::holds_alternative<Result>(plain) ||
      !std::holds_alternative<Result>(wrap))
    return false;
  const auto& rp = std::get<Result>(plain);
  const auto& rw = std::get<Result>(wrap);
  return outcome_equal(rp.res, rw.res) && rp.eff == rw.eff;
}

namespace {

SideEffectList concat(const SideEffectList& a, const SideEffectList& b) {
  SideEffectList out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

// Expected outcome of `let A = first in let B = second in A + B` composed
// from the two instrumented component runs.
Result compose_swap_side(const Result& first, const Result& second,
                         bool first_is_e1) {
  if (is_exception(first.res)) return first;
  SideEffectList both = concat(first.eff, second.eff);
  if (is_exception(second.res))
    return Result{second.res, both};
  const Value& v1 = std::get<Value>(first_is_e1 ? first.res : second.res);
  const Value& v2 = std::get<Value>(first_is_e1 ? second.res : first.res);
  auto [res, eff] = eval_builtin("+", {v1, v2}, both);
  return Result{std::move(res), std::move(eff)};
}

}  // namespace

SwapVerdict check_equiv_swap(const ExprPtr& e1, const ExprPtr& e2,
                             Clock clock) {
  std::set<Var> avoid;
  for (const auto* e : {&e1, &e2})
    for (const auto& name : free_names(**e))
      if (name.index() == 0) avoid.insert(std::get<Var>(name));
  Var a = fresh_var(avoid);
  avoid.insert(a);
  Var b = fresh_var(avoid);

  ExprPtr sum = call("+", {var(a), var(b)});
  ExprPtr lhs = let(a, e1, let(b, e2, sum));
  ExprPtr rhs = let(b, e2, let(a, e1, sum));

  ResultType r1 = eval_program(*e1, clock);
  ResultType r2 = eval_program(*e2, clock);
  ResultType rl = eval_program(*lhs, clock);
  ResultType rr = eval_program(*rhs, clock);

  if (std::holds_alternative<Timeout>(r1) ||
      std::holds_alternative<Timeout>(r2) ||
      std::holds_alternative<Timeout>(rl) ||
      std::holds_alternative<Timeout>(rr))
    return SwapVerdict::Vacuous;
  if (!std::holds_alternative<Result>(r1) ||
      !std::holds_alternative<Result>(r2) ||
      !std::holds_alternative<Result>(rl) ||
      !std::holds_alternative<Result>(rr))
    return SwapVerdict::Violated;

  const auto& c1 = std::get<Result>(r1);
  const auto& c2 = std::get<Result>(r2);
  Result want_l = compose_swap_side(c1, c2, true);
  Result want_r = compose_swap_side(c2, c1, false);

  const auto& got_l = std::get<Result>(rl);
  const auto& got_r = std::get<Result>(rr);
  if (!outcome_equal(got_l.res, want_l.res) || got_l.eff != want_l.eff)
    return SwapVerdict::Violated;
  if (!outcome_equal(got_r.res, want_r.res) || got_r.eff != want_r.eff)
    return SwapVerdict::Violated;

  const bool raised = is_exception(c1.res) || is_exception(c2.res) ||
                      is_exception(got_l.res) || is_exception(got_r.res);
  if (raised) return SwapVerdict::Conditional;

  // Unconditional branch: both sides are values and the traces are each
  // other's transposition.
  if (!outcome_equal(got_l.res, got_r.res)) return SwapVerdict::Violated;
  if (got_l.eff != concat(c1.eff, c2.eff)) return SwapVerdict::Violated;
  if (got_r.eff != concat(c2.eff, c1.eff)) return SwapVerdict::Violated;
  return SwapVerdict::Holds;
}

bool check_determinism(const ExprPtr& e, std::size_t orders, std::size_t depth,
                       std::uint64_t seed) {
  assert(orders >= 2);
  SearchOutcome base = search(Environment{}, e, {}, depth);
  for (std::size_t k = 1; k < orders; ++k) {
    RuleOrder order = RuleOrder::shuffled(seed + k);
    SearchOutcome alt = search(Environment{}, e, {}, depth, order);
    if (alt.kind != base.kind) return false;
    if (base.found()) {
      if (!outcome_equal(base.tree->result, alt.tree->result)) return false;
      if (base.tree->eff_out != alt.tree->eff_out) return false;
    }
  }
  return true;
}

}  // namespace mcerl
