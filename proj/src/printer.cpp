#include "mcerl/printer.hpp"

#include <sstream>

namespace mcerl {

namespace {

void quote_atom(std::ostream& os, const std::string& name) {
  os << '\'';
  for (char c : name) {
    if (c == '\'' || c == '\\') os << '\\';
    os << c;
  }
  os << '\'';
}

// Function-identifier position accepts unquoted canonical atoms.
void print_fid(std::ostream& os, const FunctionIdentifier& fid) {
  if (is_valid_atom_name(fid.name)) {
    os << fid.name;
  } else {
    quote_atom(os, fid.name);
  }
  os << '/' << fid.arity;
}

void print_expr(std::ostream& os, const Expression& e);

void print_params(std::ostream& os, const std::vector<ExprPtr>& params) {
  os << '(';
  for (std::size_t i = 0; i < params.size(); ++i) {
    if (i) os << ", ";
    print_expr(os, *params[i]);
  }
  os << ')';
}

void print_var_list(std::ostream& os, const std::vector<Var>& vars) {
  os << '(';
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (i) os << ", ";
    os << vars[i];
  }
  os << ')';
}

void print_expr(std::ostream& os, const Expression& e) {
  std::visit(
      overloaded{
          [&](const ELit& x) {
            if (x.lit.is_integer()) {
              os << x.lit.int_value().str();
            } else {
              quote_atom(os, x.lit.atom_name());
            }
          },
          [&](const EVar& x) { os << x.name; },
          [&](const EFunId& x) { print_fid(os, x.fid); },
          [&](const EFun& x) {
            os << "fun";
            print_var_list(os, x.params);
            os << " -> ";
            print_expr(os, *x.body);
          },
          [&](const ECall& x) {
            os << "call ";
            quote_atom(os, x.fname);
            print_params(os, x.params);
          },
          [&](const EApp& x) {
            os << "apply ";
            const bool atomic = std::holds_alternative<EVar>(x.fn->node) ||
                                std::holds_alternative<EFunId>(x.fn->node) ||
                                std::holds_alternative<ELit>(x.fn->node);
            if (atomic) {
              print_expr(os, *x.fn);
            } else {
              os << '(';
              print_expr(os, *x.fn);
              os << ')';
            }
            print_params(os, x.params);
          },
          [&](const ELet& x) {
            os << "let " << x.var << " = ";
            print_expr(os, *x.bound);
            os << " in ";
            print_expr(os, *x.body);
          },
          [&](const ELetRec& x) {
            os << "letrec ";
            print_fid(os, x.fid);
            os << " = fun";
            print_var_list(os, x.params);
            os << " -> ";
            print_expr(os, *x.fun_body);
            os << " in ";
            print_expr(os, *x.cont);
          },
          [&](const ETry& x) {
            os << "try ";
            print_expr(os, *x.guarded);
            os << " of " << x.var << " -> ";
            print_expr(os, *x.on_value);
            os << " catch (" << x.catch_vars[0] << ", " << x.catch_vars[1]
               << ", " << x.catch_vars[2] << ") -> ";
            print_expr(os, *x.on_exc);
          },
      },
      e.node);
}

}  // namespace

std::string print(const Expression& e) {
  std::ostringstream os;
  print_expr(os, e);
  return os.str();
}

std::string print(const ExprPtr& e) { return print(*e); }

std::string print_literal(const Literal& l) {
  std::ostringstream os;
  if (l.is_integer()) {
    os << l.int_value().str();
  } else {
    quote_atom(os, l.atom_name());
  }
  return os.str();
}

}  // namespace mcerl
