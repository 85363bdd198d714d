#include <doctest.h>

#include <random>

#include "mcerl/domain.hpp"
#include "mcerl/env.hpp"
#include "mcerl/generator.hpp"

using namespace mcerl;

namespace {

// Random value corpus: literals plus environment-capturing closures.
struct ValueGen {
  std::mt19937_64 rng;
  GenConfig cfg;

  Value literal() {
    if (rng() % 2) return Value::integer(BigInt(rng() % 100));
    static const char* atoms[] = {"a", "b", "ok"};
    return Value::atom(atoms[rng() % 3]);
  }

  Value value(int depth = 0) {
    if (depth >= 2 || rng() % 3 != 0) return literal();
    Closure c;
    std::size_t bindings = rng() % 3;
    for (std::size_t i = 0; i < bindings; ++i) {
      static const char* names[] = {"X", "Y", "Z"};
      c.ref = insert_value(c.ref, EnvKey{Var(names[rng() % 3])},
                           value(depth + 1));
    }
    if (rng() % 2) {
      FunctionIdentifier fid{"f", 0};
      c.ext.emplace_back(fid,
                         FunctionExpression{{}, generate_one(cfg, rng())});
    }
    std::size_t arity = rng() % 3;
    static const std::vector<Var> params = {"P", "Q", "R"};
    c.params.assign(params.begin(), params.begin() + arity);
    c.body = generate_one(cfg, rng());
    return Value::closure(std::move(c));
  }
};

}  // namespace

TEST_CASE("make_badfun wraps the offending value") {
  Exception e = make_badfun(Value::integer(5));
  CHECK(e.cls == ExceptionClass::Error);
  CHECK(value_equal(e.reason1, Value::atom("badfun")));
  CHECK(value_equal(e.reason2, Value::integer(5)));

  CHECK(value_equal(make_badfun(Value::atom("a")).reason2, Value::atom("a")));

  Value clos = Value::closure({{}, {}, {"Y"}, var("Y")});
  CHECK(value_equal(make_badfun(clos).reason2, clos));
}

TEST_CASE("make_badarity wraps the closure") {
  Value clos = Value::closure({{}, {}, {"Y"}, var("Y")});
  Exception e = make_badarity(clos);
  CHECK(e.cls == ExceptionClass::Error);
  CHECK(value_equal(e.reason1, Value::atom("badarity")));
  CHECK(value_equal(e.reason2, clos));

  Value nullary = Value::closure({{}, {}, {}, lit_atom("a")});
  CHECK(value_equal(make_badarity(nullary).reason2, nullary));
}

TEST_CASE("exclass_to_value maps onto the class atoms injectively") {
  CHECK(value_equal(exclass_to_value(ExceptionClass::Error),
                    Value::atom("error")));
  CHECK(value_equal(exclass_to_value(ExceptionClass::Throw),
                    Value::atom("throw")));
  CHECK(value_equal(exclass_to_value(ExceptionClass::Exit),
                    Value::atom("exit")));

  const ExceptionClass all[] = {ExceptionClass::Error, ExceptionClass::Throw,
                                ExceptionClass::Exit};
  for (ExceptionClass a : all)
    for (ExceptionClass b : all)
      if (a != b)
        CHECK(!value_equal(exclass_to_value(a), exclass_to_value(b)));
}

TEST_CASE("value_equal on literals") {
  CHECK(value_equal(Value::integer(9), Value::integer(9)));
  CHECK(!value_equal(Value::atom("a"), Value::atom("b")));
  CHECK(!value_equal(Value::atom("a"), Value::integer(1)));
  CHECK(!value_equal(Value::integer(1),
                     Value::closure({{}, {}, {}, lit_int(1)})));
}

TEST_CASE("closure environments compare independent of insertion order") {
  Environment fwd;
  fwd = insert_value(fwd, EnvKey{Var("A")}, Value::integer(1));
  fwd = insert_value(fwd, EnvKey{Var("B")}, Value::integer(2));
  fwd = insert_value(fwd, EnvKey{FunctionIdentifier{"f", 1}}, Value::atom("c"));

  Environment rev;
  rev = insert_value(rev, EnvKey{FunctionIdentifier{"f", 1}}, Value::atom("c"));
  rev = insert_value(rev, EnvKey{Var("B")}, Value::integer(2));
  rev = insert_value(rev, EnvKey{Var("A")}, Value::integer(1));

  CHECK(fwd == rev);
  Value c1 = Value::closure({fwd, {}, {"X"}, var("X")});
  Value c2 = Value::closure({rev, {}, {"X"}, var("X")});
  CHECK(value_equal(c1, c2));

  // and stays sensitive to the actual bindings
  Environment other = insert_value(fwd, EnvKey{Var("A")}, Value::integer(3));
  CHECK(!value_equal(c1, Value::closure({other, {}, {"X"}, var("X")})));
}

TEST_CASE("value_equal is an equivalence relation on a value corpus") {
  ValueGen g{std::mt19937_64(321), GenConfig{17, 8, 20, {"a", "b"}, true}};
  std::vector<Value> corpus;
  for (int i = 0; i < 60; ++i) corpus.push_back(g.value());

  for (const auto& v : corpus) CHECK(value_equal(v, v));
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j)
      CHECK(value_equal(corpus[i], corpus[j]) ==
            value_equal(corpus[j], corpus[i]));
  for (std::size_t i = 0; i < corpus.size(); ++i)
    for (std::size_t j = 0; j < corpus.size(); ++j)
      for (std::size_t k = 0; k < corpus.size(); ++k)
        if (value_equal(corpus[i], corpus[j]) &&
            value_equal(corpus[j], corpus[k]))
          CHECK(value_equal(corpus[i], corpus[k]));
}

TEST_CASE("trace prefix relation") {
  SideEffectList a{{SideEffectId::Input, {Value::integer(1)}}};
  SideEffectList ab = a;
  ab.push_back({SideEffectId::Output, {Value::atom("x")}});
  CHECK(is_trace_prefix({}, a));
  CHECK(is_trace_prefix(a, a));
  CHECK(is_trace_prefix(a, ab));
  CHECK(!is_trace_prefix(ab, a));
  SideEffectList b{{SideEffectId::Input, {Value::integer(2)}}};
  CHECK(!is_trace_prefix(b, ab));
}
