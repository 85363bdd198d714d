#include <doctest.h>

#include <random>

#include "mcerl/env.hpp"
#include "mcerl/fbs.hpp"
#include "mcerl/parser.hpp"

using namespace mcerl;

namespace {

EvalOutcome novar(const std::string& name) {
  return Exception{ExceptionClass::Error, Value::atom("novar"),
                   Value::atom(name)};
}

ExprPtr parsed(const char* src) {
  auto r = parse(src);
  REQUIRE(parse_ok(r));
  return std::get<ExprPtr>(r);
}

}  // namespace

TEST_CASE("get_value returns bindings and novar exceptions") {
  Environment env = insert_value({}, EnvKey{Var("X")}, Value::integer(5));
  CHECK(outcome_equal(get_value(env, EnvKey{Var("X")}),
                      EvalOutcome{Value::integer(5)}));
  CHECK(outcome_equal(get_value({}, EnvKey{Var("X")}), novar("X")));

  Closure c{{}, {}, {"Y"}, var("Y")};
  Environment env2 =
      insert_value({}, EnvKey{FunctionIdentifier{"f", 1}}, Value::closure(c));
  CHECK(outcome_equal(get_value(env2, EnvKey{FunctionIdentifier{"f", 1}}),
                      EvalOutcome{Value::closure(c)}));
  CHECK(outcome_equal(get_value(env2, EnvKey{FunctionIdentifier{"f", 2}}),
                      novar("f/2")));
}

TEST_CASE("insert_value overwrites and preserves other bindings") {
  Environment env = insert_value({}, EnvKey{Var("X")}, Value::integer(1));
  CHECK(env.size() == 1);

  Environment env2 = insert_value(env, EnvKey{Var("X")}, Value::integer(2));
  CHECK(env2.size() == 1);
  CHECK(outcome_equal(get_value(env2, EnvKey{Var("X")}),
                      EvalOutcome{Value::integer(2)}));
  // persistence: the original environment is untouched
  CHECK(outcome_equal(get_value(env, EnvKey{Var("X")}),
                      EvalOutcome{Value::integer(1)}));

  Environment env3 = insert_value(env, EnvKey{Var("Y")}, Value::integer(2));
  CHECK(env3.size() == 2);
  CHECK(outcome_equal(get_value(env3, EnvKey{Var("X")}),
                      EvalOutcome{Value::integer(1)}));
}

TEST_CASE("environment iteration is key-sorted") {
  Environment env;
  env = insert_value(env, EnvKey{FunctionIdentifier{"f", 1}}, Value::atom("c"));
  env = insert_value(env, EnvKey{Var("Z")}, Value::atom("a"));
  env = insert_value(env, EnvKey{Var("A")}, Value::atom("b"));
  env = insert_value(env, EnvKey{FunctionIdentifier{"f", 0}}, Value::atom("d"));

  const auto& es = env.entries();
  REQUIRE(es.size() == 4);
  // variables first, lexicographic; identifiers after, name then arity
  CHECK(es[0].first == EnvKey{Var("A")});
  CHECK(es[1].first == EnvKey{Var("Z")});
  CHECK(es[2].first == EnvKey{FunctionIdentifier{"f", 0}});
  CHECK(es[3].first == EnvKey{FunctionIdentifier{"f", 1}});
}

TEST_CASE("append_vars_to_env folds left to right") {
  CHECK(append_vars_to_env({}, {}, {}) == Environment{});

  const Var vars[] = {"Y", "Z"};
  const Value vals[] = {Value::atom("a"), Value::atom("b")};
  Environment env = append_vars_to_env(vars, vals, {});
  CHECK(outcome_equal(get_value(env, EnvKey{Var("Y")}),
                      EvalOutcome{Value::atom("a")}));
  CHECK(outcome_equal(get_value(env, EnvKey{Var("Z")}),
                      EvalOutcome{Value::atom("b")}));

  const Var xs[] = {"X"};
  const Value ones[] = {Value::integer(1)};
  Environment base = insert_value({}, EnvKey{Var("X")}, Value::integer(0));
  CHECK(outcome_equal(get_value(append_vars_to_env(xs, ones, base),
                                EnvKey{Var("X")}),
                      EvalOutcome{Value::integer(1)}));
}

TEST_CASE("append_vars_to_env equals a fold of insert_value") {
  std::mt19937_64 rng(99);
  const std::vector<Var> pool = {"A", "B", "C", "D", "E"};
  for (int round = 0; round < 200; ++round) {
    std::vector<Var> vars;
    std::vector<Value> vals;
    std::size_t n = rng() % 5;
    for (std::size_t i = 0; i < n; ++i) {
      vars.push_back(pool[rng() % pool.size()]);
      vals.push_back(Value::integer(BigInt(rng() % 100)));
    }
    Environment folded;
    for (std::size_t i = 0; i < n; ++i)
      folded = insert_value(folded, EnvKey{vars[i]}, vals[i]);
    CHECK(append_vars_to_env(vars, vals, {}) == folded);
  }
}

TEST_CASE("append_funs_to_env ties definitions to themselves") {
  CHECK(append_funs_to_env({}, {}, {}, {}) == Environment{});

  const FunctionIdentifier fids[] = {{"f", 0}};
  const std::vector<Var> paramss[] = {{}};
  const ExprPtr bodies[] = {lit_atom("a")};
  Environment env = append_funs_to_env(fids, paramss, bodies, {});
  const Value* v = env.lookup(EnvKey{FunctionIdentifier{"f", 0}});
  REQUIRE(v != nullptr);
  REQUIRE(v->is_closure());
  const Closure& c = v->as_closure();
  CHECK(c.ref == Environment{});
  REQUIRE(c.ext.size() == 1);
  CHECK(c.ext[0].first == FunctionIdentifier{"f", 0});
  CHECK(c.params.empty());
  CHECK(expr_equal(*c.body, *lit_atom("a")));

  // Self-visibility: a recursive identifier resolves inside its own body.
  ResultType r = eval_program(
      *parsed("letrec f/1 = fun(X) -> apply f/1(X) in 'ok'"), 50);
  REQUIRE(std::holds_alternative<Result>(r));
  CHECK(outcome_equal(std::get<Result>(r).res, EvalOutcome{Value::atom("ok")}));
}

TEST_CASE("get_env re-ties the recursive knot") {
  Environment base = insert_value({}, EnvKey{Var("X")}, Value::integer(7));
  CHECK(get_env(base, {}) == base);

  std::vector<std::pair<FunctionIdentifier, FunctionExpression>> ext;
  ext.emplace_back(FunctionIdentifier{"f", 0},
                   FunctionExpression{{}, lit_atom("a")});
  Environment env = get_env({}, ext);
  const Value* v = env.lookup(EnvKey{FunctionIdentifier{"f", 0}});
  REQUIRE(v != nullptr);
  REQUIRE(v->is_closure());
  CHECK(v->as_closure().ext.size() == 1);

  // keys outside ext are untouched
  Environment env2 = get_env(base, ext);
  CHECK(outcome_equal(get_value(env2, EnvKey{Var("X")}),
                      EvalOutcome{Value::integer(7)}));

  // Unfolding keeps recursion visible: the diverging self-application times
  // out instead of failing with novar, for every clock tried.
  ExprPtr diverging =
      parsed("letrec f/0 = fun() -> apply f/0() in apply f/0()");
  for (Clock c = 1; c <= 100; ++c)
    CHECK(std::holds_alternative<Timeout>(eval_program(*diverging, c)));
}

TEST_CASE("append_try_vars_to_env binds the three catch variables") {
  const Var vl[] = {"C", "R", "D"};
  const Value vals[] = {Value::atom("error"), Value::atom("badfun"),
                        Value::integer(5)};
  Environment base = insert_value({}, EnvKey{Var("K")}, Value::integer(1));
  Environment env = append_try_vars_to_env(vl, vals, base);
  CHECK(env.size() == 4);
  CHECK(outcome_equal(get_value(env, EnvKey{Var("C")}),
                      EvalOutcome{Value::atom("error")}));
  CHECK(outcome_equal(get_value(env, EnvKey{Var("R")}),
                      EvalOutcome{Value::atom("badfun")}));
  CHECK(outcome_equal(get_value(env, EnvKey{Var("D")}),
                      EvalOutcome{Value::integer(5)}));
  // disjoint names leave the old bindings intact
  CHECK(outcome_equal(get_value(env, EnvKey{Var("K")}),
                      EvalOutcome{Value::integer(1)}));

  // catch example: apply 5() raises badfun, the handler sees class 'error'
  ResultType r = eval_program(
      *parsed("try (apply 5()) of X -> X catch (C, R, D) -> C"), 50);
  REQUIRE(std::holds_alternative<Result>(r));
  CHECK(outcome_equal(std::get<Result>(r).res,
                      EvalOutcome{Value::atom("error")}));
}

TEST_CASE("lookup laws") {
  std::mt19937_64 rng(4242);
  const std::vector<Var> pool = {"A", "B", "C"};
  for (int round = 0; round < 100; ++round) {
    Environment env;
    std::size_t n = rng() % 4;
    for (std::size_t i = 0; i < n; ++i)
      env = insert_value(env, EnvKey{pool[rng() % pool.size()]},
                         Value::integer(BigInt(rng() % 50)));
    EnvKey k{pool[rng() % pool.size()]};
    Value v = Value::integer(BigInt(rng() % 50));
    Environment env2 = insert_value(env, k, v);
    CHECK(outcome_equal(get_value(env2, k), EvalOutcome{v}));
    for (const auto& other : pool) {
      if (EnvKey{other} == k) continue;
      CHECK(outcome_equal(get_value(env2, EnvKey{other}),
                          get_value(env, EnvKey{other})));
    }
  }
}
