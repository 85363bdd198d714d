#pragma once

#include <cstddef>
#include <memory>
#include <utility>
#include <variant>
#include <vector>

#include "mcerl/syntax.hpp"

namespace mcerl {

// Environment keys: a variable name or a function identifier. Variables
// order before function identifiers, lexicographic within each class.
using EnvKey = Name;

struct Value;

// Persistent key-sorted map from EnvKey to Value. All update operations
// return a new environment; copies share storage.
class Environment {
 public:
  using Entry = std::pair<EnvKey, Value>;

  Environment();

  const Value* lookup(const EnvKey& k) const;
  Environment with(EnvKey k, Value v) const;  // insert or overwrite
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  const std::vector<Entry>& entries() const;  // key-sorted

  friend bool operator==(const Environment& a, const Environment& b);

 private:
  struct Data;
  explicit Environment(std::shared_ptr<const Data> data)
      : data_(std::move(data)) {}
  std::shared_ptr<const Data> data_;
};

struct FunctionExpression {
  std::vector<Var> params;  // pairwise distinct
  ExprPtr body;
};

struct Closure {
  Environment ref;
  std::vector<std::pair<FunctionIdentifier, FunctionExpression>> ext;
  std::vector<Var> params;  // arity == params.size()
  ExprPtr body;
};

struct Value {
  std::variant<Literal, Closure> v;

  static Value lit(Literal l) { return Value{std::move(l)}; }
  static Value atom(std::string name) {
    return Value{Literal::atom(std::move(name))};
  }
  static Value integer(BigInt n) {
    return Value{Literal::integer(std::move(n))};
  }
  static Value closure(Closure c) { return Value{std::move(c)}; }

  bool is_lit() const { return v.index() == 0; }
  bool is_closure() const { return v.index() == 1; }
  const Literal& as_lit() const { return std::get<0>(v); }
  const Closure& as_closure() const { return std::get<1>(v); }
};

enum class ExceptionClass { Error, Throw, Exit };

struct Exception {
  ExceptionClass cls;
  Value reason1;
  Value reason2;
};

// Value + Exception, the shared semantic domain of all three engines.
using EvalOutcome = std::variant<Value, Exception>;

inline bool is_value(const EvalOutcome& o) { return o.index() == 0; }
inline bool is_exception(const EvalOutcome& o) { return o.index() == 1; }

enum class SideEffectId { Input, Output };

struct SideEffect {
  SideEffectId id;
  std::vector<Value> args;
};

// Append-only log of I/O effects; only builtin calls extend it.
using SideEffectList = std::vector<SideEffect>;

struct Timeout {};
struct Failure {};

struct Result {
  EvalOutcome res;
  SideEffectList eff;
};

// Functional big-step result: terminal result, out of fuel, or stuck.
// Failure is unreachable in this language but kept in the type.
using ResultType = std::variant<Result, Timeout, Failure>;

using ValueListOutcome = std::variant<std::vector<Value>, Exception>;

struct ListResult {
  ValueListOutcome res;
  SideEffectList eff;
};

using ResultListType = std::variant<ListResult, Timeout, Failure>;

// Structural equality. Closure environments are key-sorted internally, so
// environments built in different insertion orders compare equal.
bool value_equal(const Value& a, const Value& b);
bool operator==(const Value& a, const Value& b);
bool operator==(const Exception& a, const Exception& b);
bool operator==(const SideEffect& a, const SideEffect& b);
bool outcome_equal(const EvalOutcome& a, const EvalOutcome& b);
bool result_equal(const ResultType& a, const ResultType& b);

bool is_trace_prefix(const SideEffectList& prefix, const SideEffectList& full);

Exception make_badfun(Value v);
Exception make_badarity(Value v);  // pre: v is a closure
Value exclass_to_value(ExceptionClass c);

}  // namespace mcerl
