#include "mcerl/builtins.hpp"

namespace mcerl {

namespace {

Exception badarith(const std::string& fname) {
  return Exception{ExceptionClass::Error, Value::atom("badarith"),
                   Value::atom(fname)};
}

Exception badarg(const std::string& fname) {
  return Exception{ExceptionClass::Error, Value::atom("badarg"),
                   Value::atom(fname)};
}

BuiltinFn arith(std::string fname, BigInt (*op)(const BigInt&, const BigInt&)) {
  return [fname = std::move(fname), op](const std::vector<Value>& vals,
                                        const SideEffectList& eff)
             -> std::pair<EvalOutcome, SideEffectList> {
    if (vals.size() == 2 && vals[0].is_lit() && vals[0].as_lit().is_integer() &&
        vals[1].is_lit() && vals[1].as_lit().is_integer()) {
      return {Value::integer(
                  op(vals[0].as_lit().int_value(), vals[1].as_lit().int_value())),
              eff};
    }
    return {badarith(fname), eff};
  };
}

std::pair<EvalOutcome, SideEffectList> do_fwrite(const std::vector<Value>& vals,
                                                 const SideEffectList& eff) {
  if (vals.size() != 1) return {badarg("fwrite"), eff};
  SideEffectList out = eff;
  out.push_back(SideEffect{SideEffectId::Output, {vals[0]}});
  return {Value::atom("ok"), std::move(out)};
}

// Scripted input: the argument plays the role of the value read, so the
// semantics stay deterministic pure functions.
std::pair<EvalOutcome, SideEffectList> do_fread(const std::vector<Value>& vals,
                                                const SideEffectList& eff) {
  if (vals.size() != 1) return {badarg("fread"), eff};
  SideEffectList out = eff;
  out.push_back(SideEffect{SideEffectId::Input, {vals[0]}});
  return {vals[0], std::move(out)};
}

}  // namespace

const BuiltinTable& builtin_table() {
  static const BuiltinTable table = [] {
    BuiltinTable t;
    t["+"] = arith("+", +[](const BigInt& a, const BigInt& b) { return BigInt(a + b); });
    t["-"] = arith("-", +[](const BigInt& a, const BigInt& b) { return BigInt(a - b); });
    t["*"] = arith("*", +[](const BigInt& a, const BigInt& b) { return BigInt(a * b); });
    t["fwrite"] = do_fwrite;
    t["fread"] = do_fread;
    return t;
  }();
  return table;
}

bool is_builtin(const std::string& fname) {
  return builtin_table().count(fname) > 0;
}

bool builtin_has_effects(const std::string& fname) {
  return fname == "fwrite" || fname == "fread";
}

std::vector<std::string> builtin_names() {
  std::vector<std::string> names;
  for (const auto& [name, fn] : builtin_table()) names.push_back(name);
  return names;
}

std::pair<EvalOutcome, SideEffectList> eval_builtin(
    const std::string& fname, const std::vector<Value>& vals,
    const SideEffectList& eff) {
  const auto& table = builtin_table();
  auto it = table.find(fname);
  if (it == table.end()) {
    return {Exception{ExceptionClass::Error, Value::atom("undef"),
                      Value::atom(fname)},
            eff};
  }
  return it->second(vals, eff);
}

}  // namespace mcerl
