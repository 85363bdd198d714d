#include "mcerl/domain.hpp"

#include <algorithm>
#include <cassert>

namespace mcerl {

struct Environment::Data {
  std::vector<Entry> entries;  // sorted by key, unique keys
};

Environment::Environment() {
  static const auto empty = std::make_shared<const Data>();
  data_ = empty;
}

const std::vector<Environment::Entry>& Environment::entries() const {
  return data_->entries;
}

std::size_t Environment::size() const { return data_->entries.size(); }

const Value* Environment::lookup(const EnvKey& k) const {
  const auto& es = data_->entries;
  auto it = std::lower_bound(
      es.begin(), es.end(), k,
      [](const Entry& e, const EnvKey& key) { return e.first < key; });
  if (it != es.end() && it->first == k) return &it->second;
  return nullptr;
}

Environment Environment::with(EnvKey k, Value v) const {
  auto data = std::make_shared<Data>(*data_);
  auto& es = data->entries;
  auto it = std::lower_bound(
      es.begin(), es.end(), k,
      [](const Entry& e, const EnvKey& key) { return e.first < key; });
  if (it != es.end() && it->first == k) {
    it->second = std::move(v);
  } else {
    es.insert(it, Entry{std::move(k), std::move(v)});
  }
  return Environment{std::move(data)};
}

bool operator==(const Environment& a, const Environment& b) {
  if (a.data_ == b.data_) return true;
  const auto& ea = a.entries();
  const auto& eb = b.entries();
  if (ea.size() != eb.size()) return false;
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (ea[i].first != eb[i].first) return false;
    if (!value_equal(ea[i].second, eb[i].second)) return false;
  }
  return true;
}

namespace {

bool closure_equal(const Closure& a, const Closure& b) {
  if (a.params != b.params) return false;
  if (!expr_equal(*a.body, *b.body)) return false;
  if (a.ext.size() != b.ext.size()) return false;
  for (std::size_t i = 0; i < a.ext.size(); ++i) {
    if (a.ext[i].first != b.ext[i].first) return false;
    if (a.ext[i].second.params != b.ext[i].second.params) return false;
    if (!expr_equal(*a.ext[i].second.body, *b.ext[i].second.body))
      return false;
  }
  return a.ref == b.ref;
}

}  // namespace

bool value_equal(const Value& a, const Value& b) {
  if (a.v.index() != b.v.index()) return false;
  if (a.is_lit()) return a.as_lit() == b.as_lit();
  return closure_equal(a.as_closure(), b.as_closure());
}

bool operator==(const Value& a, const Value& b) { return value_equal(a, b); }

bool operator==(const Exception& a, const Exception& b) {
  return a.cls == b.cls && value_equal(a.reason1, b.reason1) &&
         value_equal(a.reason2, b.reason2);
}

bool operator==(const SideEffect& a, const SideEffect& b) {
  if (a.id != b.id || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!value_equal(a.args[i], b.args[i])) return false;
  return true;
}

bool outcome_equal(const EvalOutcome& a, const EvalOutcome& b) {
  if (a.index() != b.index()) return false;
  if (is_value(a)) return value_equal(std::get<Value>(a), std::get<Value>(b));
  return std::get<Exception>(a) == std::get<Exception>(b);
}

bool result_equal(const ResultType& a, const ResultType& b) {
  if (a.index() != b.index()) return false;
  if (!std::holds_alternative<Result>(a)) return true;
  const auto& ra = std::get<Result>(a);
  const auto& rb = std::get<Result>(b);
  return outcome_equal(ra.res, rb.res) && ra.eff == rb.eff;
}

bool is_trace_prefix(const SideEffectList& prefix, const SideEffectList& full) {
  if (prefix.size() > full.size()) return false;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (!(prefix[i] == full[i])) return false;
  return true;
}

Exception make_badfun(Value v) {
  return Exception{ExceptionClass::Error, Value::atom("badfun"), std::move(v)};
}

Exception make_badarity(Value v) {
  assert(v.is_closure());
  return Exception{ExceptionClass::Error, Value::atom("badarity"),
                   std::move(v)};
}

Value exclass_to_value(ExceptionClass c) {
  switch (c) {
    case ExceptionClass::Error:
      return Value::atom("error");
    case ExceptionClass::Throw:
      return Value::atom("throw");
    case ExceptionClass::Exit:
      return Value::atom("exit");
  }
  assert(false);
  return Value::atom("error");
}

}  // namespace mcerl
