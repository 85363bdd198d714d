#include "mcerl/json_io.hpp"

#include <stdexcept>

#include "mcerl/parser.hpp"
#include "mcerl/printer.hpp"

namespace mcerl {

namespace {

Json literal_to_json(const Literal& l) {
  if (l.is_atom()) return Json{{"atom", l.atom_name()}};
  return Json{{"int", l.int_value().str()}};
}

Json key_to_json(const EnvKey& k) {
  if (k.index() == 0) return Json{{"var", std::get<Var>(k)}};
  const auto& fid = std::get<FunctionIdentifier>(k);
  return Json{{"fun", {{"arity", fid.arity}, {"name", fid.name}}}};
}

const char* exclass_name(ExceptionClass c) {
  switch (c) {
    case ExceptionClass::Error: return "error";
    case ExceptionClass::Throw: return "throw";
    case ExceptionClass::Exit: return "exit";
  }
  return "?";
}

Json exception_to_json(const Exception& ex) {
  return Json{{"class", exclass_name(ex.cls)},
              {"reason1", value_to_json(ex.reason1)},
              {"reason2", value_to_json(ex.reason2)}};
}

[[noreturn]] void malformed(const std::string& what) {
  throw std::runtime_error("malformed document: " + what);
}

ExprPtr expr_from_source(const Json& j, const char* what) {
  if (!j.is_string()) malformed(std::string(what) + " must be source text");
  ParseResult r = parse(j.get<std::string>());
  if (!parse_ok(r))
    malformed(std::string(what) + ": " +
              format_parse_error(std::get<ParseError>(r)));
  return std::get<ExprPtr>(r);
}

}  // namespace

Json value_to_json(const Value& v) {
  if (v.is_lit()) return literal_to_json(v.as_lit());
  const Closure& c = v.as_closure();
  Json ext = Json::array();
  for (const auto& [fid, fe] : c.ext) {
    ext.push_back(Json{{"arity", fid.arity},
                       {"body", print(fe.body)},
                       {"name", fid.name},
                       {"params", fe.params}});
  }
  return Json{{"closure",
               {{"body", print(c.body)},
                {"env", env_to_json(c.ref)},
                {"ext", std::move(ext)},
                {"params", c.params}}}};
}

Json env_to_json(const Environment& env) {
  Json pairs = Json::array();
  for (const auto& [k, v] : env.entries())
    pairs.push_back(Json::array({key_to_json(k), value_to_json(v)}));
  return pairs;
}

Json outcome_to_json(const EvalOutcome& o) {
  if (is_value(o))
    return Json{{"kind", "value"}, {"value", value_to_json(std::get<Value>(o))}};
  return Json{{"exception", exception_to_json(std::get<Exception>(o))},
              {"kind", "exception"}};
}

Json effects_to_json(const SideEffectList& eff) {
  Json out = Json::array();
  for (const auto& e : eff) {
    Json args = Json::array();
    for (const auto& v : e.args) args.push_back(value_to_json(v));
    out.push_back(Json{
        {"args", std::move(args)},
        {"id", e.id == SideEffectId::Input ? "input" : "output"}});
  }
  return out;
}

Json result_to_json(const ResultType& r) {
  if (std::holds_alternative<Timeout>(r))
    return Json{{"result", {{"kind", "timeout"}}}};
  if (std::holds_alternative<Failure>(r))
    return Json{{"result", {{"kind", "failure"}}}};
  const auto& res = std::get<Result>(r);
  return Json{{"effects", effects_to_json(res.eff)},
              {"result", outcome_to_json(res.res)}};
}

Json derivation_to_json(const Derivation& d) {
  Json children = Json::array();
  for (const auto& c : d.children) children.push_back(derivation_to_json(c));
  Json node{{"rule", std::string(rule_name(d.rule))},
            {"env", env_to_json(d.env)},
            {"expr", print(d.expr)},
            {"eff_in", effects_to_json(d.eff_in)},
            {"result", outcome_to_json(d.result)},
            {"eff_out", effects_to_json(d.eff_out)},
            {"children", std::move(children)}};
  if (d.aux) {
    Json vals = Json::array();
    for (const auto& v : d.aux->vals) vals.push_back(value_to_json(v));
    Json effs = Json::array();
    for (const auto& e : d.aux->effs) effs.push_back(effects_to_json(e));
    Json aux{{"effs", std::move(effs)}, {"vals", std::move(vals)}};
    if (d.aux->index) aux["i"] = *d.aux->index;
    node["aux"] = std::move(aux);
  }
  return node;
}

Json search_outcome_to_json(const SearchOutcome& s) {
  switch (s.kind) {
    case SearchOutcome::Kind::Found: {
      Json j = result_to_json(
          ResultType{Result{s.tree->result, s.tree->eff_out}});
      j["kind"] = "found";
      return j;
    }
    case SearchOutcome::Kind::DepthExhausted:
      return Json{{"kind", "depth-exhausted"}};
    case SearchOutcome::Kind::NoDerivation:
      return Json{{"kind", "no-derivation"}};
  }
  return Json{};
}

Json pretty_trace_to_json(const PrettyTrace& t) {
  Json out = Json::array();
  for (PrettyRule r : t) out.push_back(std::string(pretty_rule_name(r)));
  return out;
}

Json diff_report_to_json(const DiffReport& r) {
  Json j{{"program", print(r.program)},
         {"fbs", result_to_json(r.outcomes.fbs)},
         {"bigstep", search_outcome_to_json(r.outcomes.bigstep)},
         {"pretty", result_to_json(r.outcomes.pretty)}};
  switch (r.verdict.kind) {
    case VerdictKind::Agree: j["verdict"] = "agree"; break;
    case VerdictKind::AllDiverged: j["verdict"] = "all-diverged"; break;
    case VerdictKind::Disagree:
      j["verdict"] = "disagree";
      j["detail"] = r.verdict.detail;
      break;
  }
  return j;
}

Value value_from_json(const Json& j) {
  if (!j.is_object()) malformed("value must be an object");
  if (j.contains("atom")) return Value::atom(j.at("atom").get<std::string>());
  if (j.contains("int")) {
    try {
      return Value::integer(BigInt(j.at("int").get<std::string>()));
    } catch (const std::exception&) {
      malformed("bad integer literal");
    }
  }
  if (j.contains("closure")) {
    const Json& c = j.at("closure");
    Closure out;
    out.ref = env_from_json(c.at("env"));
    for (const Json& e : c.at("ext")) {
      FunctionIdentifier fid{e.at("name").get<std::string>(),
                             e.at("arity").get<std::size_t>()};
      FunctionExpression fe{e.at("params").get<std::vector<Var>>(),
                            expr_from_source(e.at("body"), "ext body")};
      out.ext.emplace_back(std::move(fid), std::move(fe));
    }
    out.params = c.at("params").get<std::vector<Var>>();
    out.body = expr_from_source(c.at("body"), "closure body");
    return Value::closure(std::move(out));
  }
  malformed("unknown value kind");
}

Environment env_from_json(const Json& j) {
  if (!j.is_array()) malformed("environment must be an array of pairs");
  Environment env;
  for (const Json& pair : j) {
    if (!pair.is_array() || pair.size() != 2)
      malformed("environment entry must be a [key, value] pair");
    const Json& k = pair[0];
    EnvKey key;
    if (k.contains("var")) {
      key = EnvKey{k.at("var").get<Var>()};
    } else if (k.contains("fun")) {
      key = EnvKey{FunctionIdentifier{k.at("fun").at("name").get<std::string>(),
                                      k.at("fun").at("arity").get<std::size_t>()}};
    } else {
      malformed("unknown environment key kind");
    }
    env = env.with(std::move(key), value_from_json(pair[1]));
  }
  return env;
}

EvalOutcome outcome_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "value") return value_from_json(j.at("value"));
  if (kind == "exception") {
    const Json& e = j.at("exception");
    const std::string cls = e.at("class").get<std::string>();
    ExceptionClass c;
    if (cls == "error") c = ExceptionClass::Error;
    else if (cls == "throw") c = ExceptionClass::Throw;
    else if (cls == "exit") c = ExceptionClass::Exit;
    else malformed("unknown exception class");
    return Exception{c, value_from_json(e.at("reason1")),
                     value_from_json(e.at("reason2"))};
  }
  malformed("unknown outcome kind");
}

SideEffectList effects_from_json(const Json& j) {
  if (!j.is_array()) malformed("effects must be an array");
  SideEffectList out;
  for (const Json& e : j) {
    const std::string id = e.at("id").get<std::string>();
    SideEffect se;
    if (id == "input") se.id = SideEffectId::Input;
    else if (id == "output") se.id = SideEffectId::Output;
    else malformed("unknown side effect id");
    for (const Json& a : e.at("args")) se.args.push_back(value_from_json(a));
    out.push_back(std::move(se));
  }
  return out;
}

Derivation derivation_from_json(const Json& j) {
  Derivation d;
  auto rule = rule_from_name(j.at("rule").get<std::string>());
  if (!rule) malformed("unknown rule name");
  d.rule = *rule;
  d.env = env_from_json(j.at("env"));
  d.expr = expr_from_source(j.at("expr"), "node expression");
  d.eff_in = effects_from_json(j.at("eff_in"));
  d.result = outcome_from_json(j.at("result"));
  d.eff_out = effects_from_json(j.at("eff_out"));
  if (j.contains("aux")) {
    DerivAux aux;
    for (const Json& v : j.at("aux").at("vals"))
      aux.vals.push_back(value_from_json(v));
    for (const Json& e : j.at("aux").at("effs"))
      aux.effs.push_back(effects_from_json(e));
    if (j.at("aux").contains("i"))
      aux.index = j.at("aux").at("i").get<std::size_t>();
    d.aux = std::move(aux);
  }
  for (const Json& c : j.at("children"))
    d.children.push_back(derivation_from_json(c));
  return d;
}

std::string canonical_dump(const Json& j) { return j.dump(); }

}  // namespace mcerl
