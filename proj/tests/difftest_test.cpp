#include <doctest.h>

#include <map>

#include "mcerl/difftest.hpp"
#include "mcerl/parser.hpp"
#include "mcerl/printer.hpp"

using namespace mcerl;

namespace {

ExprPtr parsed(const char* src) {
  auto r = parse(src);
  REQUIRE(parse_ok(r));
  return std::get<ExprPtr>(r);
}

}  // namespace

TEST_CASE("generation is deterministic in the seed") {
  GenConfig cfg;
  cfg.seed = 42;
  auto a = generate(cfg, 50);
  auto b = generate(cfg, 50);
  REQUIRE(a.size() == 50);
  for (std::size_t i = 0; i < a.size(); ++i)
    CHECK(expr_equal(*a[i], *b[i]));

  cfg.seed = 43;
  auto c = generate(cfg, 50);
  bool any_different = false;
  for (std::size_t i = 0; i < a.size(); ++i)
    any_different = any_different || !expr_equal(*a[i], *c[i]);
  CHECK(any_different);

  CHECK(generate(cfg, 0).empty());
}

TEST_CASE("generated programs are closed and within budget") {
  GenConfig cfg;
  cfg.seed = 99;
  cfg.max_size = 30;
  for (const auto& e : generate(cfg, 500)) {
    CHECK(free_names(*e).empty());
    CHECK(expr_size(*e) <= cfg.max_size);
  }
}

TEST_CASE("pure generation avoids effectful builtins") {
  GenConfig cfg;
  cfg.seed = 7;
  cfg.allow_effects = false;
  for (const auto& e : generate(cfg, 200)) {
    ResultType r = eval_program(*e, 1000);
    if (std::holds_alternative<Result>(r))
      CHECK(std::get<Result>(r).eff.empty());
  }
}

namespace {

void count_rules(const Derivation& d, std::map<RuleName, int>& counts) {
  ++counts[d.rule];
  for (const auto& c : d.children) count_rules(c, counts);
}

}  // namespace

TEST_CASE("every rule fires at least 10 times across 1000 programs") {
  GenConfig cfg;
  cfg.seed = 5;
  std::map<RuleName, int> counts;
  for (const auto& e : generate(cfg, 1000)) {
    SearchOutcome s = mcerl::search({}, e, {}, 1000);
    if (s.found()) count_rules(*s.tree, counts);
  }
  static const RuleName all[] = {
      RuleName::Lit,     RuleName::Var,     RuleName::FunId,
      RuleName::Fun,     RuleName::Call,    RuleName::App,
      RuleName::Let,     RuleName::LetRec,  RuleName::Try,
      RuleName::Catch,   RuleName::AppExc1, RuleName::AppExc2,
      RuleName::AppExc3, RuleName::AppExc4, RuleName::CallExc,
      RuleName::LetExc};
  for (RuleName r : all) {
    CAPTURE(rule_name(r));
    CHECK(counts[r] >= 10);
  }
}

TEST_CASE("agree classifies the three verdicts") {
  // identical results from all engines
  EngineOutcomes same = run_engines(parsed("call '+'(4, 5)"), 100, 100);
  CHECK(agree(same).kind == VerdictKind::Agree);

  EngineOutcomes diverged = run_engines(
      parsed("letrec f/0 = fun() -> apply f/0() in apply f/0()"), 100, 100);
  CHECK(agree(diverged).kind == VerdictKind::AllDiverged);

  // a doctored pretty result must be flagged with a field-level detail
  EngineOutcomes doctored = same;
  doctored.pretty = Result{Value::atom("b"), {}};
  Verdict v = agree(doctored);
  CHECK(v.kind == VerdictKind::Disagree);
  CHECK(v.detail.find("pretty") != std::string::npos);

  // mixed terminal/divergent combinations disagree
  EngineOutcomes mixed = same;
  mixed.fbs = Timeout{};
  CHECK(agree(mixed).kind == VerdictKind::Disagree);
}

TEST_CASE("cross-engine agreement on a corpus") {
  GenConfig cfg;
  cfg.seed = 1234;
  for (const auto& e : generate(cfg, 300)) {
    DiffReport r = run_diff(e);
    CAPTURE(print(e));
    CHECK(r.verdict.kind != VerdictKind::Disagree);
  }
}

TEST_CASE("check_monotone") {
  CHECK(check_monotone(lit_atom("a"), 5));
  CHECK(check_monotone(
      parsed("let X = 4 in let Y = 5 in apply (fun(X, Y) -> X + Y) (X, Y)"),
      1000));
  // vacuous when nothing terminates in range
  CHECK(check_monotone(
      parsed("letrec f/0 = fun() -> apply f/0() in apply f/0()"), 100));
}

TEST_CASE("wrap law: e is equivalent to let X = fun() -> e in apply X()") {
  CHECK(check_equiv_wrap(lit_int(4)));
  // effects survive the wrapper
  CHECK(check_equiv_wrap(parsed("call 'fwrite'('a')")));
  // exceptions survive the wrapper
  CHECK(check_equiv_wrap(parsed("apply 5()")));
  // divergence on both sides
  CHECK(check_equiv_wrap(
      parsed("letrec f/0 = fun() -> apply f/0() in apply f/0()")));
  // the fresh variable never captures: e mentioning X0 still works
  CHECK(check_equiv_wrap(parsed("let X0 = 1 in X0 + 1")));
}

TEST_CASE("swap law on pure integer expressions") {
  CHECK(check_equiv_swap(lit_int(4), lit_int(5)) == SwapVerdict::Holds);
  CHECK(check_equiv_swap(parsed("2 * 3"), parsed("10 - 1")) ==
        SwapVerdict::Holds);
}

TEST_CASE("swap law transposes the effect segments") {
  // fread logs Input(4) / Input(5); left runs e1 first, right runs e2 first
  CHECK(check_equiv_swap(parsed("call 'fread'(4)"), parsed("call 'fread'(5)")) ==
        SwapVerdict::Holds);

  ExprPtr e1 = parsed("call 'fread'(4)");
  ExprPtr e2 = parsed("call 'fread'(5)");
  ExprPtr lhs = parsed("let A = call 'fread'(4) in "
                       "let B = call 'fread'(5) in A + B");
  ExprPtr rhs = parsed("let B = call 'fread'(5) in "
                       "let A = call 'fread'(4) in A + B");
  ResultType rl = eval_program(*lhs, 1000);
  ResultType rr = eval_program(*rhs, 1000);
  REQUIRE(std::holds_alternative<Result>(rl));
  REQUIRE(std::holds_alternative<Result>(rr));
  CHECK(outcome_equal(std::get<Result>(rl).res,
                      EvalOutcome{Value::integer(9)}));
  CHECK(outcome_equal(std::get<Result>(rl).res, std::get<Result>(rr).res));
  const auto& tl = std::get<Result>(rl).eff;
  const auto& tr = std::get<Result>(rr).eff;
  REQUIRE(tl.size() == 2);
  REQUIRE(tr.size() == 2);
  CHECK(tl[0] == tr[1]);
  CHECK(tl[1] == tr[0]);
}

TEST_CASE("swap law fails elementwise when effects log closures") {
  // A closure logged inside e1 captures the enclosing environment. In the
  // left form e1 runs before B exists; in the swapped form the captured
  // environment contains B, so the logged values differ structurally and
  // the trace transposition cannot hold. All engines agree on each side;
  // the law itself is what breaks.
  ExprPtr logs_closure = parsed("call 'fwrite'(fun() -> 'a')");
  ExprPtr plain = parsed("call 'fread'(1)");
  CHECK(check_equiv_swap(logs_closure, plain) == SwapVerdict::Violated);
  CHECK(agree(run_engines(let("B", plain, let("A", logs_closure,
                                              call("+", {var("A"), var("B")}))),
                          1000, 1000))
            .kind == VerdictKind::Agree);
}

TEST_CASE("swap law is conditional when a side raises") {
  CHECK(check_equiv_swap(parsed("apply 5()"), lit_int(1)) ==
        SwapVerdict::Conditional);
  CHECK(check_equiv_swap(lit_int(1), parsed("apply 5()")) ==
        SwapVerdict::Conditional);
  // non-integer values make the sum raise badarith; still consistent
  CHECK(check_equiv_swap(lit_atom("a"), lit_int(1)) ==
        SwapVerdict::Conditional);
  // divergence is vacuous
  CHECK(check_equiv_swap(
            parsed("letrec f/0 = fun() -> apply f/0() in apply f/0()"),
            lit_int(1)) == SwapVerdict::Vacuous);
}

namespace {

std::size_t tree_height(const Derivation& d) {
  std::size_t deepest = 0;
  for (const auto& c : d.children) deepest = std::max(deepest, tree_height(c));
  return 1 + deepest;
}

}  // namespace

TEST_CASE("minimal fuel equals derivation height") {
  // Both engines decrement their budget once per premise along the same
  // recursion structure, so the timeout boundaries coincide exactly.
  GenConfig cfg;
  cfg.seed = 808;
  for (const auto& e : generate(cfg, 150)) {
    SearchOutcome s = mcerl::search({}, e, {}, 1000);
    if (!s.found()) continue;
    std::size_t h = tree_height(*s.tree);
    Clock first = 0;
    for (Clock c = 1; c <= 1000; ++c) {
      if (std::holds_alternative<Result>(eval_program(*e, c))) {
        first = c;
        break;
      }
    }
    CHECK(first == h);
  }
}

TEST_CASE("check_determinism") {
  CHECK(check_determinism(lit_atom("a"), 10, 50));
  CHECK(check_determinism(parsed("apply (fun(Y) -> Y)('a', 'b')"), 10, 50));
  CHECK(check_determinism(
      parsed("try call '+'(call 'fread'(1), 'x') of X -> X "
             "catch (C, R, D) -> R"),
      10, 50));
}
