#include <doctest.h>

#include <random>

#include "mcerl/bigstep.hpp"
#include "mcerl/fbs.hpp"
#include "mcerl/generator.hpp"
#include "mcerl/parser.hpp"

using namespace mcerl;

namespace {

ExprPtr parsed(const char* src) {
  auto r = parse(src);
  REQUIRE(parse_ok(r));
  return std::get<ExprPtr>(r);
}

SideEffectList eff_out(SideEffectId id, const Value& v) {
  return SideEffectList{{id, {v}}};
}

Derivation lit_node(const Environment& env, ExprPtr e, const Value& v,
                    const SideEffectList& eff) {
  return Derivation{RuleName::Lit, env, std::move(e), eff, v, eff, {}, {}};
}

// Hand derivation of `let X = fun(Y, Z) -> Y in apply X('a', 'b')`:
//   Let
//   |- Fun:   <{}, fun(Y,Z) -> Y, []> -> <clos, []>
//   |- App:   <{X=clos}, apply X('a','b'), []> -> <'a', []>
//      |- Var:  X ~> clos
//      |- Lit 'a', Lit 'b'   (eval_all, effs [[], []])
//      |- Var:  <{Y='a', Z='b'}, Y, []> -> <'a', []>
Derivation listing1_first_tree() {
  ExprPtr funYZ = fun({"Y", "Z"}, var("Y"));
  ExprPtr appX = apply(var("X"), {lit_atom("a"), lit_atom("b")});
  ExprPtr prog = let("X", funYZ, appX);

  Value clos = Value::closure({{}, {}, {"Y", "Z"}, var("Y")});
  Environment env_x = insert_value({}, EnvKey{Var("X")}, clos);
  const Var param_names[] = {"Y", "Z"};
  const Value param_vals[] = {Value::atom("a"), Value::atom("b")};
  Environment env_yz = append_vars_to_env(param_names, param_vals, {});

  Derivation fun_d{RuleName::Fun, {}, funYZ, {}, clos, {}, {}, {}};
  Derivation fn_var{RuleName::Var, env_x, var("X"), {}, clos, {}, {}, {}};
  Derivation body_d{
      RuleName::Var, env_yz, var("Y"), {}, Value::atom("a"), {}, {}, {}};
  Derivation app_d{RuleName::App,
                   env_x,
                   appX,
                   {},
                   Value::atom("a"),
                   {},
                   {fn_var, lit_node(env_x, lit_atom("a"), Value::atom("a"), {}),
                    lit_node(env_x, lit_atom("b"), Value::atom("b"), {}),
                    body_d},
                   DerivAux{{Value::atom("a"), Value::atom("b")},
                            {SideEffectList{}, SideEffectList{}},
                            std::nullopt}};
  return Derivation{RuleName::Let,          {}, prog, {}, Value::atom("a"),
                    {}, {fun_d, app_d}, {}};
}

}  // namespace

TEST_CASE("nth_def") {
  SideEffectList a = eff_out(SideEffectId::Output, Value::atom("a"));
  SideEffectList b = eff_out(SideEffectId::Output, Value::atom("b"));
  SideEffectList def = eff_out(SideEffectId::Input, Value::integer(0));
  const SideEffectList ab[] = {a, b};

  CHECK(nth_def({}, def, 0) == def);
  CHECK(nth_def(ab, def, 0) == def);
  CHECK(nth_def(ab, def, 1) == a);
  CHECK(nth_def(ab, def, 2) == b);

  CHECK(last_def({}, def) == def);
  CHECK(last_def(ab, def) == b);
}

TEST_CASE("check_eval_all") {
  CHECK(check_eval_all({}, {}, {}, {}, {}, {}));

  // the parameter block of the first example's application
  Environment env;
  const ExprPtr es[] = {lit_atom("a"), lit_atom("b")};
  const Value vals[] = {Value::atom("a"), Value::atom("b")};
  const SideEffectList effs[] = {{}, {}};
  const Derivation children[] = {
      lit_node(env, lit_atom("a"), Value::atom("a"), {}),
      lit_node(env, lit_atom("b"), Value::atom("b"), {})};
  CHECK(check_eval_all(children, env, es, vals, effs, {}));

  const Value reversed[] = {Value::atom("b"), Value::atom("a")};
  CHECK(!check_eval_all(children, env, es, reversed, effs, {}));

  const Value one[] = {Value::atom("a")};
  CHECK(!check_eval_all(children, env, es, one, effs, {}));
}

TEST_CASE("check_eval_prefix") {
  Environment env;
  const ExprPtr es[] = {lit_int(4), parsed("call 'x'()")};

  // i = 0 is vacuous even with pending elements
  CHECK(check_eval_prefix({}, env, es, {}, 0, {}, {}));

  const Value vals[] = {Value::integer(4)};
  const SideEffectList effs[] = {{}};
  const Derivation children[] = {
      lit_node(env, lit_int(4), Value::integer(4), {})};
  CHECK(check_eval_prefix(children, env, es, vals, 1, effs, {}));

  // i must stay strictly below the list length
  const ExprPtr just4[] = {lit_int(4)};
  CHECK(!check_eval_prefix(children, env, just4, vals, 1, effs, {}));
}

TEST_CASE("check_derivation accepts axioms and rejects wrong results") {
  SideEffectList eff = eff_out(SideEffectId::Output, Value::atom("x"));
  Derivation ok = lit_node({}, lit_atom("a"), Value::atom("a"), eff);
  CHECK(check_derivation(ok).ok);

  Derivation wrong_val = ok;
  wrong_val.result = Value::atom("b");
  CHECK(!check_derivation(wrong_val).ok);

  Derivation wrong_eff = ok;
  wrong_eff.eff_out.push_back({SideEffectId::Input, {Value::integer(1)}});
  auto r = check_derivation(wrong_eff);
  CHECK(!r.ok);
  CHECK(r.path == "root");
}

TEST_CASE("check_derivation validates the hand-built first example tree") {
  Derivation tree = listing1_first_tree();
  CHECK(check_derivation(tree).ok);
  CHECK(outcome_equal(tree.result, EvalOutcome{Value::atom("a")}));

  // rule tag swapped at the root
  Derivation bad_rule = tree;
  bad_rule.rule = RuleName::LetExc;
  CHECK(!check_derivation(bad_rule).ok);

  // values swapped inside the application's aux vector
  Derivation bad_aux = tree;
  std::swap(bad_aux.children[1].aux->vals[0], bad_aux.children[1].aux->vals[1]);
  CHECK(!check_derivation(bad_aux).ok);

  // body derivation claims the wrong environment
  Derivation bad_env = tree;
  bad_env.children[1].children[3].env =
      insert_value(bad_env.children[1].children[3].env, EnvKey{Var("Y")},
                   Value::atom("b"));
  CHECK(!check_derivation(bad_env).ok);
}

TEST_CASE("search finds the axioms directly") {
  Environment env = insert_value({}, EnvKey{Var("V")}, Value::integer(1));
  SearchOutcome s = mcerl::search(env, lit_atom("a"), {}, 10);
  REQUIRE(s.found());
  CHECK(s.tree->rule == RuleName::Lit);
  CHECK(outcome_equal(s.tree->result, EvalOutcome{Value::atom("a")}));
  CHECK(check_derivation(*s.tree).ok);
}

TEST_CASE("search derives the second example with an empty trace") {
  SearchOutcome s = mcerl::search(
      {}, parsed("let X = 4 in let Y = 5 in apply (fun(X, Y) -> X + Y) (X, Y)"),
      {}, 50);
  REQUIRE(s.found());
  CHECK(outcome_equal(s.tree->result, EvalOutcome{Value::integer(9)}));
  CHECK(s.tree->eff_out.empty());
  CHECK(check_derivation(*s.tree).ok);
}

TEST_CASE("search on the diverging letrec exhausts the depth budget") {
  SearchOutcome s = mcerl::search(
      {}, parsed("letrec f/0 = fun() -> apply f/0() in apply f/0()"), {}, 100);
  CHECK(s.kind == SearchOutcome::Kind::DepthExhausted);
}

TEST_CASE("exception rules produce checkable derivations") {
  struct Case {
    const char* src;
    RuleName root;
    const char* reason1;
  };
  const Case cases[] = {
      {"apply 5()", RuleName::AppExc1, "badfun"},
      {"apply (fun(Y) -> Y)('a', 'b')", RuleName::AppExc2, "badarity"},
      {"apply (apply 5())('a')", RuleName::AppExc3, "badfun"},
      {"apply (fun(Y) -> Y)(apply 5())", RuleName::AppExc4, "badfun"},
      {"call '+'(4, apply 5())", RuleName::CallExc, "badfun"},
      {"let X = apply 5() in 'ok'", RuleName::LetExc, "badfun"},
      {"call '+'('a', 1)", RuleName::Call, "badarith"},
      {"X", RuleName::Var, "novar"},
  };
  for (const auto& c : cases) {
    CAPTURE(c.src);
    SearchOutcome s = mcerl::search({}, parsed(c.src), {}, 100);
    REQUIRE(s.found());
    CHECK(s.tree->rule == c.root);
    REQUIRE(is_exception(s.tree->result));
    CHECK(value_equal(std::get<Exception>(s.tree->result).reason1,
                      Value::atom(c.reason1)));
    CHECK(check_derivation(*s.tree).ok);
  }
}

TEST_CASE("prefix rules record the failing index and preserved effects") {
  // fwrite succeeds first, so the failing parameter sits at index 1 with the
  // output entry already on the trace.
  SearchOutcome s = mcerl::search(
      {}, parsed("call '+'(call 'fwrite'('a'), apply 5())"), {}, 100);
  REQUIRE(s.found());
  CHECK(s.tree->rule == RuleName::CallExc);
  REQUIRE(s.tree->aux.has_value());
  CHECK(s.tree->aux->index == std::size_t{1});
  CHECK(s.tree->eff_out.size() == 1);
  CHECK(s.tree->eff_out[0].id == SideEffectId::Output);
  CHECK(check_derivation(*s.tree).ok);
}

TEST_CASE("determinism under permuted rule-attempt order") {
  // only AppExc2 applies at the final step, whatever the order
  ExprPtr e = parsed("apply (fun(Y) -> Y)('a', 'b')");
  SearchOutcome base = mcerl::search({}, e, {}, 50);
  REQUIRE(base.found());
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    SearchOutcome alt = mcerl::search({}, e, {}, 50, RuleOrder::shuffled(seed));
    REQUIRE(alt.found());
    CHECK(outcome_equal(base.tree->result, alt.tree->result));
    CHECK(base.tree->eff_out == alt.tree->eff_out);
  }
}

TEST_CASE("instantiate_all never yields two distinct results") {
  const char* programs[] = {
      "'a'", "apply 5()", "call '+'(1, 2)", "let X = 1 in X",
      "try apply 5() of X -> X catch (C, R, D) -> C",
  };
  for (const char* src : programs) {
    auto all = instantiate_all({}, parsed(src), {}, 50);
    REQUIRE(!all.empty());
    for (std::size_t i = 1; i < all.size(); ++i) {
      CHECK(outcome_equal(all[0].result, all[i].result));
      CHECK(all[0].eff_out == all[i].eff_out);
    }
  }
}

namespace {

void check_trace_monotone(const Derivation& d) {
  CHECK(is_trace_prefix(d.eff_in, d.eff_out));
  for (const auto& c : d.children) check_trace_monotone(c);
}

std::size_t height(const Derivation& d) {
  std::size_t deepest = 0;
  for (const auto& c : d.children) deepest = std::max(deepest, height(c));
  return 1 + deepest;
}

}  // namespace

TEST_CASE("the depth limit bounds exactly the derivation height") {
  CHECK(mcerl::search({}, parsed("let X = 1 in X"), {}, 1).kind ==
        SearchOutcome::Kind::DepthExhausted);
  CHECK(mcerl::search({}, parsed("let X = 1 in X"), {}, 2).found());

  GenConfig cfg;
  cfg.seed = 617;
  for (const auto& e : generate(cfg, 150)) {
    SearchOutcome s = mcerl::search({}, e, {}, 1000);
    if (!s.found()) continue;
    std::size_t h = height(*s.tree);
    CHECK(h <= 1000);
    CHECK(mcerl::search({}, e, {}, h).found());
    if (h > 1) CHECK(!mcerl::search({}, e, {}, h - 1).found());
  }
}

TEST_CASE("soundness and agreement with the functional engine on a corpus") {
  GenConfig cfg;
  cfg.seed = 77;
  for (const auto& e : generate(cfg, 300)) {
    SearchOutcome s = mcerl::search({}, e, {}, 1000);
    if (!s.found()) continue;
    CAPTURE(expr_size(*e));
    CHECK(check_derivation(*s.tree).ok);
    check_trace_monotone(*s.tree);
    ResultType r = eval_program(*e, 1000);
    REQUIRE(std::holds_alternative<Result>(r));
    CHECK(outcome_equal(std::get<Result>(r).res, s.tree->result));
    CHECK(std::get<Result>(r).eff == s.tree->eff_out);
  }
}
