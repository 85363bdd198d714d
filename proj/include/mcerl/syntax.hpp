#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mcerl {

using BigInt = boost::multiprecision::cpp_int;

// Variables are uppercase-initial identifiers, atoms lowercase-initial.
using Var = std::string;

bool is_valid_atom_name(std::string_view name);
bool is_valid_var_name(std::string_view name);

struct Literal {
  std::variant<std::string, BigInt> v;  // atom name | integer

  static Literal atom(std::string name) { return Literal{std::move(name)}; }
  static Literal integer(BigInt n) { return Literal{std::move(n)}; }

  bool is_atom() const { return v.index() == 0; }
  bool is_integer() const { return v.index() == 1; }
  const std::string& atom_name() const { return std::get<0>(v); }
  const BigInt& int_value() const { return std::get<1>(v); }

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct FunctionIdentifier {
  std::string name;
  std::size_t arity = 0;

  friend auto operator<=>(const FunctionIdentifier&,
                          const FunctionIdentifier&) = default;
};

// A free or bound name: either a variable or a function identifier.
// Variables order before function identifiers (variant index ordering).
using Name = std::variant<Var, FunctionIdentifier>;

struct Expression;
using ExprPtr = std::shared_ptr<const Expression>;

struct ELit {
  Literal lit;
};
struct EVar {
  Var name;
};
struct EFunId {
  FunctionIdentifier fid;
};
struct EFun {
  std::vector<Var> params;  // pairwise distinct
  ExprPtr body;
};
struct ECall {
  std::string fname;
  std::vector<ExprPtr> params;
};
struct EApp {
  ExprPtr fn;
  std::vector<ExprPtr> params;
};
struct ELet {
  Var var;
  ExprPtr bound;
  ExprPtr body;
};
struct ELetRec {
  FunctionIdentifier fid;     // fid.arity == params.size()
  std::vector<Var> params;    // pairwise distinct
  ExprPtr fun_body;           // fid and params in scope here
  ExprPtr cont;               // fid in scope here
};
struct ETry {
  ExprPtr guarded;
  Var var;            // bound in on_value
  ExprPtr on_value;
  std::vector<Var> catch_vars;  // exactly 3, pairwise distinct; bound in on_exc
  ExprPtr on_exc;
};

struct Expression {
  std::variant<ELit, EVar, EFunId, EFun, ECall, EApp, ELet, ELetRec, ETry>
      node;
};

// Factories; each returns a freshly allocated immutable node.
ExprPtr lit_atom(std::string name);
ExprPtr lit_int(BigInt n);
ExprPtr var(Var name);
ExprPtr fun_id(std::string name, std::size_t arity);
ExprPtr fun(std::vector<Var> params, ExprPtr body);
ExprPtr call(std::string fname, std::vector<ExprPtr> params);
ExprPtr apply(ExprPtr fn, std::vector<ExprPtr> params);
ExprPtr let(Var v, ExprPtr bound, ExprPtr body);
ExprPtr letrec(FunctionIdentifier fid, std::vector<Var> params,
               ExprPtr fun_body, ExprPtr cont);
ExprPtr try_catch(ExprPtr guarded, Var v, ExprPtr on_value,
                  std::vector<Var> catch_vars, ExprPtr on_exc);

bool expr_equal(const Expression& a, const Expression& b);

// Names occurring free in e under the binding rules of
// EFun/ELet/ELetRec/ETry.
std::set<Name> free_names(const Expression& e);

// Smallest name in the sequence X0, X1, ... not contained in avoid.
Var fresh_var(const std::set<Var>& avoid);

// Node count; every constructor counts 1.
std::size_t expr_size(const Expression& e);

// Helper for std::visit.
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace mcerl
