#include "mcerl/syntax.hpp"

#include <algorithm>
#include <cassert>

namespace mcerl {

namespace {

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return c >= 'A' && c <= 'Z'; }
bool is_ident_tail(char c) {
  return is_lower(c) || is_upper(c) || (c >= '0' && c <= '9') || c == '_' ||
         c == '@';
}

}  // namespace

bool is_valid_atom_name(std::string_view name) {
  if (name.empty() || !is_lower(name[0])) return false;
  return std::all_of(name.begin() + 1, name.end(), is_ident_tail);
}

bool is_valid_var_name(std::string_view name) {
  if (name.empty() || !(is_upper(name[0]) || name[0] == '_')) return false;
  return std::all_of(name.begin() + 1, name.end(), is_ident_tail);
}

namespace {

ExprPtr mk(Expression e) { return std::make_shared<const Expression>(std::move(e)); }

bool pairwise_distinct(const std::vector<Var>& names) {
  for (std::size_t i = 0; i < names.size(); ++i)
    for (std::size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j]) return false;
  return true;
}

}  // namespace

ExprPtr lit_atom(std::string name) {
  return mk({ELit{Literal::atom(std::move(name))}});
}

ExprPtr lit_int(BigInt n) { return mk({ELit{Literal::integer(std::move(n))}}); }

ExprPtr var(Var name) { return mk({EVar{std::move(name)}}); }

ExprPtr fun_id(std::string name, std::size_t arity) {
  return mk({EFunId{FunctionIdentifier{std::move(name), arity}}});
}

ExprPtr fun(std::vector<Var> params, ExprPtr body) {
  assert(pairwise_distinct(params));
  return mk({EFun{std::move(params), std::move(body)}});
}

ExprPtr call(std::string fname, std::vector<ExprPtr> params) {
  return mk({ECall{std::move(fname), std::move(params)}});
}

ExprPtr apply(ExprPtr fn, std::vector<ExprPtr> params) {
  return mk({EApp{std::move(fn), std::move(params)}});
}

ExprPtr let(Var v, ExprPtr bound, ExprPtr body) {
  return mk({ELet{std::move(v), std::move(bound), std::move(body)}});
}

ExprPtr letrec(FunctionIdentifier fid, std::vector<Var> params,
               ExprPtr fun_body, ExprPtr cont) {
  assert(fid.arity == params.size());
  assert(pairwise_distinct(params));
  return mk({ELetRec{std::move(fid), std::move(params), std::move(fun_body),
                     std::move(cont)}});
}

ExprPtr try_catch(ExprPtr guarded, Var v, ExprPtr on_value,
                  std::vector<Var> catch_vars, ExprPtr on_exc) {
  assert(catch_vars.size() == 3);
  assert(pairwise_distinct(catch_vars));
  return mk({ETry{std::move(guarded), std::move(v), std::move(on_value),
                  std::move(catch_vars), std::move(on_exc)}});
}

namespace {

bool ptrs_equal(const ExprPtr& a, const ExprPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return expr_equal(*a, *b);
}

bool lists_equal(const std::vector<ExprPtr>& a, const std::vector<ExprPtr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!ptrs_equal(a[i], b[i])) return false;
  return true;
}

}  // namespace

bool expr_equal(const Expression& a, const Expression& b) {
  if (a.node.index() != b.node.index()) return false;
  return std::visit(
      overloaded{
          [&](const ELit& x) { return x.lit == std::get<ELit>(b.node).lit; },
          [&](const EVar& x) { return x.name == std::get<EVar>(b.node).name; },
          [&](const EFunId& x) {
            return x.fid == std::get<EFunId>(b.node).fid;
          },
          [&](const EFun& x) {
            const auto& y = std::get<EFun>(b.node);
            return x.params == y.params && ptrs_equal(x.body, y.body);
          },
          [&](const ECall& x) {
            const auto& y = std::get<ECall>(b.node);
            return x.fname == y.fname && lists_equal(x.params, y.params);
          },
          [&](const EApp& x) {
            const auto& y = std::get<EApp>(b.node);
            return ptrs_equal(x.fn, y.fn) && lists_equal(x.params, y.params);
          },
          [&](const ELet& x) {
            const auto& y = std::get<ELet>(b.node);
            return x.var == y.var && ptrs_equal(x.bound, y.bound) &&
                   ptrs_equal(x.body, y.body);
          },
          [&](const ELetRec& x) {
            const auto& y = std::get<ELetRec>(b.node);
            return x.fid == y.fid && x.params == y.params &&
                   ptrs_equal(x.fun_body, y.fun_body) &&
                   ptrs_equal(x.cont, y.cont);
          },
          [&](const ETry& x) {
            const auto& y = std::get<ETry>(b.node);
            return ptrs_equal(x.guarded, y.guarded) && x.var == y.var &&
                   ptrs_equal(x.on_value, y.on_value) &&
                   x.catch_vars == y.catch_vars &&
                   ptrs_equal(x.on_exc, y.on_exc);
          },
      },
      a.node);
}

namespace {

void collect_free(const Expression& e, std::set<Name>& bound,
                  std::set<Name>& out) {
  std::visit(
      overloaded{
          [&](const ELit&) {},
          [&](const EVar& x) {
            if (!bound.count(Name{x.name})) out.insert(Name{x.name});
          },
          [&](const EFunId& x) {
            if (!bound.count(Name{x.fid})) out.insert(Name{x.fid});
          },
          [&](const EFun& x) {
            std::set<Name> inner = bound;
            for (const auto& p : x.params) inner.insert(Name{p});
            collect_free(*x.body, inner, out);
          },
          [&](const ECall& x) {
            for (const auto& p : x.params) collect_free(*p, bound, out);
          },
          [&](const EApp& x) {
            collect_free(*x.fn, bound, out);
            for (const auto& p : x.params) collect_free(*p, bound, out);
          },
          [&](const ELet& x) {
            collect_free(*x.bound, bound, out);
            std::set<Name> inner = bound;
            inner.insert(Name{x.var});
            collect_free(*x.body, inner, out);
          },
          [&](const ELetRec& x) {
            std::set<Name> in_fun = bound;
            in_fun.insert(Name{x.fid});
            for (const auto& p : x.params) in_fun.insert(Name{p});
            collect_free(*x.fun_body, in_fun, out);
            std::set<Name> in_cont = bound;
            in_cont.insert(Name{x.fid});
            collect_free(*x.cont, in_cont, out);
          },
          [&](const ETry& x) {
            collect_free(*x.guarded, bound, out);
            std::set<Name> in_val = bound;
            in_val.insert(Name{x.var});
            collect_free(*x.on_value, in_val, out);
            std::set<Name> in_exc = bound;
            for (const auto& v : x.catch_vars) in_exc.insert(Name{v});
            collect_free(*x.on_exc, in_exc, out);
          },
      },
      e.node);
}

}  // namespace

std::set<Name> free_names(const Expression& e) {
  std::set<Name> bound;
  std::set<Name> out;
  collect_free(e, bound, out);
  return out;
}

Var fresh_var(const std::set<Var>& avoid) {
  for (std::size_t i = 0;; ++i) {
    Var candidate = "X" + std::to_string(i);
    if (!avoid.count(candidate)) return candidate;
  }
}

std::size_t expr_size(const Expression& e) {
  return std::visit(
      overloaded{
          [](const ELit&) -> std::size_t { return 1; },
          [](const EVar&) -> std::size_t { return 1; },
          [](const EFunId&) -> std::size_t { return 1; },
          [](const EFun& x) { return 1 + expr_size(*x.body); },
          [](const ECall& x) {
            std::size_t n = 1;
            for (const auto& p : x.params) n += expr_size(*p);
            return n;
          },
          [](const EApp& x) {
            std::size_t n = 1 + expr_size(*x.fn);
            for (const auto& p : x.params) n += expr_size(*p);
            return n;
          },
          [](const ELet& x) {
            return 1 + expr_size(*x.bound) + expr_size(*x.body);
          },
          [](const ELetRec& x) {
            return 1 + expr_size(*x.fun_body) + expr_size(*x.cont);
          },
          [](const ETry& x) {
            return 1 + expr_size(*x.guarded) + expr_size(*x.on_value) +
                   expr_size(*x.on_exc);
          },
      },
      e.node);
}

}  // namespace mcerl
