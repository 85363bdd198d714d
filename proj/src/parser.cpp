#include "mcerl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace mcerl {

namespace {

enum class Tok {
  KwLet,
  KwLetRec,
  KwFun,
  KwApply,
  KwCall,
  KwTry,
  KwOf,
  KwCatch,
  KwIn,
  Variable,
  Atom,        // unquoted, lowercase-initial
  QuotedAtom,  // content already unescaped
  Integer,     // digits only
  LParen,
  RParen,
  Comma,
  Equals,
  Arrow,
  Plus,
  Minus,
  Star,
  Slash,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

struct LexFail {
  SourceSpan span;
  std::string message;
};

const char* token_name(Tok t) {
  switch (t) {
    case Tok::KwLet: return "'let'";
    case Tok::KwLetRec: return "'letrec'";
    case Tok::KwFun: return "'fun'";
    case Tok::KwApply: return "'apply'";
    case Tok::KwCall: return "'call'";
    case Tok::KwTry: return "'try'";
    case Tok::KwOf: return "'of'";
    case Tok::KwCatch: return "'catch'";
    case Tok::KwIn: return "'in'";
    case Tok::Variable: return "variable";
    case Tok::Atom: return "atom";
    case Tok::QuotedAtom: return "quoted atom";
    case Tok::Integer: return "integer";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::Comma: return "','";
    case Tok::Equals: return "'='";
    case Tok::Arrow: return "'->'";
    case Tok::Plus: return "'+'";
    case Tok::Minus: return "'-'";
    case Tok::Star: return "'*'";
    case Tok::Slash: return "'/'";
    case Tok::End: return "end of input";
  }
  return "?";
}

bool ident_start_lower(char c) { return c >= 'a' && c <= 'z'; }
bool ident_start_upper(char c) {
  return (c >= 'A' && c <= 'Z') || c == '_';
}
bool ident_tail(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '@';
}

std::variant<std::vector<Token>, LexFail> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  while (i < n) {
    char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    if (c == '%') {
      while (i < n && src[i] != '\n') ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      while (i < n && std::isdigit(static_cast<unsigned char>(src[i]))) ++i;
      out.push_back({Tok::Integer, std::string(src.substr(start, i - start)),
                     {start, i}});
      continue;
    }
    if (ident_start_lower(c)) {
      while (i < n && ident_tail(src[i])) ++i;
      std::string word(src.substr(start, i - start));
      Tok kind = Tok::Atom;
      if (word == "let") kind = Tok::KwLet;
      else if (word == "letrec") kind = Tok::KwLetRec;
      else if (word == "fun") kind = Tok::KwFun;
      else if (word == "apply") kind = Tok::KwApply;
      else if (word == "call") kind = Tok::KwCall;
      else if (word == "try") kind = Tok::KwTry;
      else if (word == "of") kind = Tok::KwOf;
      else if (word == "catch") kind = Tok::KwCatch;
      else if (word == "in") kind = Tok::KwIn;
      out.push_back({kind, std::move(word), {start, i}});
      continue;
    }
    if (ident_start_upper(c)) {
      while (i < n && ident_tail(src[i])) ++i;
      out.push_back({Tok::Variable, std::string(src.substr(start, i - start)),
                     {start, i}});
      continue;
    }
    if (c == '\'') {
      ++i;
      std::string content;
      bool closed = false;
      while (i < n) {
        char d = src[i];
        if (d == '\'') {
          ++i;
          closed = true;
          break;
        }
        if (d == '\\') {
          if (i + 1 >= n) break;
          char esc = src[i + 1];
          if (esc != '\'' && esc != '\\')
            return LexFail{{i, i + 2}, "unknown escape in atom"};
          content.push_back(esc);
          i += 2;
          continue;
        }
        if (d == '\n' || static_cast<unsigned char>(d) < 0x20 ||
            static_cast<unsigned char>(d) > 0x7e)
          return LexFail{{i, i + 1}, "invalid character in atom"};
        content.push_back(d);
        ++i;
      }
      if (!closed) return LexFail{{start, i}, "unterminated atom"};
      if (content.empty()) return LexFail{{start, i}, "empty atom"};
      out.push_back({Tok::QuotedAtom, std::move(content), {start, i}});
      continue;
    }
    switch (c) {
      case '(':
        out.push_back({Tok::LParen, "(", {start, start + 1}});
        ++i;
        continue;
      case ')':
        out.push_back({Tok::RParen, ")", {start, start + 1}});
        ++i;
        continue;
      case ',':
        out.push_back({Tok::Comma, ",", {start, start + 1}});
        ++i;
        continue;
      case '=':
        out.push_back({Tok::Equals, "=", {start, start + 1}});
        ++i;
        continue;
      case '+':
        out.push_back({Tok::Plus, "+", {start, start + 1}});
        ++i;
        continue;
      case '*':
        out.push_back({Tok::Star, "*", {start, start + 1}});
        ++i;
        continue;
      case '/':
        out.push_back({Tok::Slash, "/", {start, start + 1}});
        ++i;
        continue;
      case '-':
        if (i + 1 < n && src[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", {start, start + 2}});
          i += 2;
        } else {
          out.push_back({Tok::Minus, "-", {start, start + 1}});
          ++i;
        }
        continue;
      default:
        return LexFail{{start, start + 1}, "unexpected character"};
    }
  }
  out.push_back({Tok::End, "", {n, n}});
  return out;
}

struct ParseFail {
  ParseError err;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ExprPtr parse_top() {
    ExprPtr e = parse_expr();
    expect(Tok::End);
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    std::size_t i = std::min(pos_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& advance() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool at(Tok t) const { return peek().kind == t; }

  [[noreturn]] void fail(std::string message,
                         std::vector<std::string> expected = {}) {
    throw ParseFail{
        ParseError{peek().span, std::move(message), std::move(expected)}};
  }

  Token expect(Tok t) {
    if (!at(t))
      fail(std::string("expected ") + token_name(t), {token_name(t)});
    return advance();
  }

  // ATOM in function-identifier/call position: quoted or unquoted.
  std::string expect_atom_name() {
    if (at(Tok::Atom) || at(Tok::QuotedAtom)) return advance().text;
    fail("expected atom", {token_name(Tok::Atom), token_name(Tok::QuotedAtom)});
  }

  std::size_t expect_arity() {
    Token t = expect(Tok::Integer);
    if (t.text.size() > 9) fail("arity out of range");
    return static_cast<std::size_t>(std::stoul(t.text));
  }

  std::vector<Var> parse_var_list() {
    expect(Tok::LParen);
    std::vector<Var> vars;
    if (!at(Tok::RParen)) {
      vars.push_back(expect(Tok::Variable).text);
      while (at(Tok::Comma)) {
        advance();
        vars.push_back(expect(Tok::Variable).text);
      }
    }
    expect(Tok::RParen);
    for (std::size_t i = 0; i < vars.size(); ++i)
      for (std::size_t j = i + 1; j < vars.size(); ++j)
        if (vars[i] == vars[j]) fail("duplicate parameter name " + vars[i]);
    return vars;
  }

  std::vector<ExprPtr> parse_expr_list() {
    expect(Tok::LParen);
    std::vector<ExprPtr> exprs;
    if (!at(Tok::RParen)) {
      exprs.push_back(parse_expr());
      while (at(Tok::Comma)) {
        advance();
        exprs.push_back(parse_expr());
      }
    }
    expect(Tok::RParen);
    return exprs;
  }

  ExprPtr parse_expr() {
    if (++depth_ > kMaxNesting) fail("expression nesting too deep");
    ExprPtr e = parse_expr_inner();
    --depth_;
    return e;
  }

  ExprPtr parse_expr_inner() {
    switch (peek().kind) {
      case Tok::KwLet: {
        advance();
        Var v = expect(Tok::Variable).text;
        expect(Tok::Equals);
        ExprPtr bound = parse_expr();
        expect(Tok::KwIn);
        ExprPtr body = parse_expr();
        return let(std::move(v), std::move(bound), std::move(body));
      }
      case Tok::KwLetRec: {
        advance();
        std::string name = expect_atom_name();
        expect(Tok::Slash);
        std::size_t arity = expect_arity();
        expect(Tok::Equals);
        expect(Tok::KwFun);
        std::vector<Var> params = parse_var_list();
        if (params.size() != arity)
          fail("letrec arity " + std::to_string(arity) + " does not match " +
               std::to_string(params.size()) + " parameters");
        expect(Tok::Arrow);
        ExprPtr fun_body = parse_expr();
        expect(Tok::KwIn);
        ExprPtr cont = parse_expr();
        return letrec(FunctionIdentifier{std::move(name), arity},
                      std::move(params), std::move(fun_body), std::move(cont));
      }
      case Tok::KwFun: {
        advance();
        std::vector<Var> params = parse_var_list();
        expect(Tok::Arrow);
        ExprPtr body = parse_expr();
        return fun(std::move(params), std::move(body));
      }
      case Tok::KwApply: {
        advance();
        ExprPtr fn = parse_expr();
        std::vector<ExprPtr> args = parse_expr_list();
        return apply(std::move(fn), std::move(args));
      }
      case Tok::KwCall: {
        advance();
        std::string fname = expect_atom_name();
        std::vector<ExprPtr> args = parse_expr_list();
        return call(std::move(fname), std::move(args));
      }
      case Tok::KwTry: {
        advance();
        ExprPtr guarded = parse_expr();
        expect(Tok::KwOf);
        Var v = expect(Tok::Variable).text;
        expect(Tok::Arrow);
        ExprPtr on_value = parse_expr();
        expect(Tok::KwCatch);
        expect(Tok::LParen);
        std::vector<Var> cv;
        cv.push_back(expect(Tok::Variable).text);
        expect(Tok::Comma);
        cv.push_back(expect(Tok::Variable).text);
        expect(Tok::Comma);
        cv.push_back(expect(Tok::Variable).text);
        expect(Tok::RParen);
        if (cv[0] == cv[1] || cv[0] == cv[2] || cv[1] == cv[2])
          fail("catch variables must be pairwise distinct");
        expect(Tok::Arrow);
        ExprPtr on_exc = parse_expr();
        return try_catch(std::move(guarded), std::move(v),
                         std::move(on_value), std::move(cv),
                         std::move(on_exc));
      }
      default:
        return parse_add_expr();
    }
  }

  // Flat left-associative chain; each operator desugars to a call.
  ExprPtr parse_add_expr() {
    ExprPtr lhs = parse_primary();
    while (at(Tok::Plus) || at(Tok::Minus) || at(Tok::Star)) {
      std::string op = advance().text;
      ExprPtr rhs = parse_primary();
      lhs = call(std::move(op), {std::move(lhs), std::move(rhs)});
    }
    return lhs;
  }

  ExprPtr parse_primary() {
    switch (peek().kind) {
      case Tok::Integer:
        return lit_int(BigInt(advance().text));
      case Tok::Minus: {
        advance();
        Token t = expect(Tok::Integer);
        return lit_int(-BigInt(t.text));
      }
      case Tok::QuotedAtom: {
        std::string name = advance().text;
        if (at(Tok::Slash)) {
          advance();
          std::size_t arity = expect_arity();
          return fun_id(std::move(name), arity);
        }
        return lit_atom(std::move(name));
      }
      case Tok::Atom: {
        std::string name = advance().text;
        expect(Tok::Slash);
        std::size_t arity = expect_arity();
        return fun_id(std::move(name), arity);
      }
      case Tok::Variable:
        return var(advance().text);
      case Tok::LParen: {
        advance();
        ExprPtr e = parse_expr();
        expect(Tok::RParen);
        return e;
      }
      default:
        fail("expected expression",
             {"integer", "atom", "variable", "function identifier", "'('"});
    }
  }

  static constexpr std::size_t kMaxNesting = 3000;

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

}  // namespace

ParseResult parse(std::string_view src) {
  auto lexed = lex(src);
  if (std::holds_alternative<LexFail>(lexed)) {
    const auto& f = std::get<LexFail>(lexed);
    return ParseError{f.span, f.message, {}};
  }
  try {
    Parser p(std::move(std::get<std::vector<Token>>(lexed)));
    return p.parse_top();
  } catch (const ParseFail& f) {
    return f.err;
  }
}

std::string format_parse_error(const ParseError& err) {
  std::ostringstream os;
  os << "parse error at " << err.span.begin << ".." << err.span.end << ": "
     << err.message;
  if (!err.expected.empty()) {
    os << " (expected ";
    for (std::size_t i = 0; i < err.expected.size(); ++i) {
      if (i) os << " or ";
      os << err.expected[i];
    }
    os << ")";
  }
  return os.str();
}

}  // namespace mcerl
