#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "mcerl/difftest.hpp"
#include "mcerl/json_io.hpp"
#include "mcerl/parser.hpp"
#include "mcerl/printer.hpp"

namespace {

using namespace mcerl;

constexpr int kExitOk = 0;
constexpr int kExitPropertyFailure = 1;
constexpr int kExitUsage = 2;

std::optional<std::string> read_input(const std::string& inline_src,
                                      const std::string& path) {
  if (!inline_src.empty()) return inline_src;
  if (path.empty()) return std::nullopt;
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Exits with 2 on parse failure, per the CLI contract.
ExprPtr parse_or_die(const std::string& src) {
  ParseResult r = parse(src);
  if (!parse_ok(r)) {
    std::cerr << format_parse_error(std::get<ParseError>(r)) << "\n";
    std::exit(kExitUsage);
  }
  return std::get<ExprPtr>(r);
}

std::string value_to_text(const Value& v) {
  if (v.is_lit()) return print_literal(v.as_lit());
  const Closure& c = v.as_closure();
  return print(fun(c.params, c.body));
}

std::string outcome_to_text(const EvalOutcome& o) {
  if (is_value(o)) return "value " + value_to_text(std::get<Value>(o));
  const auto& ex = std::get<Exception>(o);
  std::string cls = value_to_text(exclass_to_value(ex.cls));
  return "exception " + cls + " " + value_to_text(ex.reason1) + " " +
         value_to_text(ex.reason2);
}

std::string effects_to_text(const SideEffectList& eff) {
  std::string out;
  for (const auto& e : eff) {
    out += e.id == SideEffectId::Input ? "  input" : "  output";
    for (const auto& a : e.args) out += " " + value_to_text(a);
    out += "\n";
  }
  return out;
}

void print_result_text(const std::string& label, const ResultType& r) {
  std::cout << label;
  if (std::holds_alternative<Timeout>(r)) {
    std::cout << "timeout\n";
    return;
  }
  if (std::holds_alternative<Failure>(r)) {
    std::cout << "failure\n";
    return;
  }
  const auto& res = std::get<Result>(r);
  std::cout << outcome_to_text(res.res) << "\n"
            << effects_to_text(res.eff);
}

struct EvalOptions {
  std::string engine = "fbs";
  Clock fuel = kDefaultClock;
  std::size_t depth = kDefaultClock;
  std::string inline_src;
  std::string path;
  std::vector<std::string> emit;
  std::string format = "json";
};

bool emits(const EvalOptions& opt, const std::string& what) {
  if (opt.emit.empty()) return what == "result" || what == "trace";
  for (const auto& e : opt.emit)
    if (e == what) return true;
  return false;
}

Json engine_doc_fbs(const EvalOptions& opt, const ExprPtr& program) {
  ResultType r = eval_program(*program, opt.fuel);
  Json doc = result_to_json(r);
  if (!emits(opt, "trace")) doc.erase("effects");
  if (!emits(opt, "result")) doc.erase("result");
  return doc;
}

Json engine_doc_bigstep(const EvalOptions& opt, const ExprPtr& program) {
  SearchOutcome s = search(Environment{}, program, {}, opt.depth);
  Json doc = search_outcome_to_json(s);
  if (!emits(opt, "trace")) doc.erase("effects");
  if (!emits(opt, "result")) doc.erase("result");
  if (s.found() && emits(opt, "derivation"))
    doc["derivation"] = derivation_to_json(*s.tree);
  return doc;
}

Json engine_doc_pretty(const EvalOptions& opt, const ExprPtr& program) {
  auto [r, trace] = eval_pretty(Environment{}, PrettyTerm{program}, {},
                                opt.depth);
  Json doc = result_to_json(r);
  if (!emits(opt, "trace")) doc.erase("effects");
  if (!emits(opt, "result")) doc.erase("result");
  if (emits(opt, "rule-trace")) doc["rule_trace"] = pretty_trace_to_json(trace);
  return doc;
}

int cmd_eval(const EvalOptions& opt) {
  auto src = read_input(opt.inline_src, opt.path);
  if (!src) {
    std::cerr << "no input program\n";
    return kExitUsage;
  }
  ExprPtr program = parse_or_die(*src);

  if (opt.format == "text") {
    if (opt.engine == "fbs" || opt.engine == "all")
      print_result_text("fbs: ", eval_program(*program, opt.fuel));
    if (opt.engine == "pretty" || opt.engine == "all") {
      auto [r, trace] = eval_pretty(Environment{}, PrettyTerm{program}, {},
                                    opt.depth);
      print_result_text("pretty: ", r);
    }
    if (opt.engine == "bigstep" || opt.engine == "all") {
      SearchOutcome s = search(Environment{}, program, {}, opt.depth);
      if (s.found()) {
        print_result_text(
            "bigstep: ", ResultType{Result{s.tree->result, s.tree->eff_out}});
      } else {
        std::cout << "bigstep: "
                  << (s.kind == SearchOutcome::Kind::DepthExhausted
                          ? "depth-exhausted"
                          : "no-derivation")
                  << "\n";
      }
    }
    return kExitOk;
  }

  Json doc;
  if (opt.engine == "fbs") doc = engine_doc_fbs(opt, program);
  else if (opt.engine == "bigstep") doc = engine_doc_bigstep(opt, program);
  else if (opt.engine == "pretty") doc = engine_doc_pretty(opt, program);
  else {
    doc["fbs"] = engine_doc_fbs(opt, program);
    doc["bigstep"] = engine_doc_bigstep(opt, program);
    doc["pretty"] = engine_doc_pretty(opt, program);
  }
  std::cout << canonical_dump(doc) << "\n";
  return kExitOk;
}

int cmd_diff(const EvalOptions& opt, const std::string& corpus_path) {
  std::vector<ExprPtr> programs;
  if (!corpus_path.empty()) {
    // corpus file: one program per line, blank lines skipped
    auto text = read_input("", corpus_path);
    if (!text) {
      std::cerr << "cannot read corpus file\n";
      return kExitUsage;
    }
    std::istringstream lines(*text);
    std::string line;
    while (std::getline(lines, line)) {
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      programs.push_back(parse_or_die(line));
    }
  } else {
    auto src = read_input(opt.inline_src, opt.path);
    if (!src) {
      std::cerr << "no input program\n";
      return kExitUsage;
    }
    programs.push_back(parse_or_die(*src));
  }
  for (const auto& program : programs) {
    DiffReport report = run_diff(program, opt.fuel, opt.depth);
    std::cout << canonical_dump(diff_report_to_json(report)) << "\n";
    if (report.verdict.kind == VerdictKind::Disagree)
      return kExitPropertyFailure;
  }
  return kExitOk;
}

struct FuzzOptions {
  std::uint64_t seed = 1;
  std::size_t count = 100;
  std::size_t max_size = 30;
  std::uint64_t max_int = 100;
  bool pure = false;
  Clock fuel = kDefaultClock;
  std::size_t depth = kDefaultClock;
  std::string save_path;
};

int cmd_fuzz(const FuzzOptions& opt) {
  GenConfig cfg;
  cfg.seed = opt.seed;
  cfg.max_size = opt.max_size;
  cfg.max_int = opt.max_int;
  cfg.allow_effects = !opt.pure;
  std::ofstream save;
  if (!opt.save_path.empty()) {
    save.open(opt.save_path);
    if (!save) {
      std::cerr << "cannot write " << opt.save_path << "\n";
      return kExitUsage;
    }
  }
  for (std::size_t i = 0; i < opt.count; ++i) {
    ExprPtr program = generate_one(cfg, i);
    if (save.is_open()) save << print(program) << "\n";
    DiffReport report = run_diff(program, opt.fuel, opt.depth);
    Json line = diff_report_to_json(report);
    line["index"] = i;
    std::cout << canonical_dump(line) << "\n";
    if (report.verdict.kind == VerdictKind::Disagree) {
      std::cerr << "counterexample: " << print(program) << "\n";
      return kExitPropertyFailure;
    }
  }
  return kExitOk;
}

struct EquivOptions {
  std::string law = "wrap";
  std::string inline_src;
  std::string second_src;
  std::size_t count = 0;
  std::uint64_t seed = 1;
  Clock fuel = kDefaultClock;
};

const char* swap_verdict_name(SwapVerdict v) {
  switch (v) {
    case SwapVerdict::Holds: return "holds";
    case SwapVerdict::Conditional: return "conditional";
    case SwapVerdict::Vacuous: return "vacuous";
    case SwapVerdict::Violated: return "violated";
  }
  return "?";
}

int cmd_equiv(const EquivOptions& opt) {
  bool all_ok = true;
  auto report_wrap = [&](const ExprPtr& e) {
    bool ok = check_equiv_wrap(e, opt.fuel);
    all_ok = all_ok && ok;
    Json line{{"law", "wrap"}, {"program", print(e)}, {"holds", ok}};
    std::cout << canonical_dump(line) << "\n";
  };
  auto report_swap = [&](const ExprPtr& e1, const ExprPtr& e2) {
    SwapVerdict v = check_equiv_swap(e1, e2, opt.fuel);
    all_ok = all_ok && swap_law_ok(v);
    Json line{{"law", "swap"},
              {"e1", print(e1)},
              {"e2", print(e2)},
              {"verdict", swap_verdict_name(v)}};
    std::cout << canonical_dump(line) << "\n";
  };

  if (opt.count > 0) {
    GenConfig cfg;
    cfg.seed = opt.seed;
    if (opt.law == "wrap") {
      for (std::size_t i = 0; i < opt.count; ++i)
        report_wrap(generate_one(cfg, i));
    } else {
      for (std::size_t i = 0; i < opt.count; ++i)
        report_swap(generate_one(cfg, 2 * i), generate_one(cfg, 2 * i + 1));
    }
    return all_ok ? kExitOk : kExitPropertyFailure;
  }

  if (opt.inline_src.empty()) {
    std::cerr << "equiv needs -e (and --second for swap) or --count\n";
    return kExitUsage;
  }
  ExprPtr e1 = parse_or_die(opt.inline_src);
  if (opt.law == "wrap") {
    report_wrap(e1);
  } else {
    if (opt.second_src.empty()) {
      std::cerr << "swap law needs --second\n";
      return kExitUsage;
    }
    report_swap(e1, parse_or_die(opt.second_src));
  }
  return all_ok ? kExitOk : kExitPropertyFailure;
}

int cmd_check(const std::string& path) {
  auto text = read_input("", path);
  if (!text) {
    std::cerr << "cannot read derivation document\n";
    return kExitUsage;
  }
  Json doc;
  Derivation d;
  try {
    doc = Json::parse(*text);
    // accept both a bare derivation node and an eval document wrapping one
    if (doc.is_object() && doc.contains("derivation"))
      doc = doc.at("derivation");
    else if (doc.is_object() && doc.contains("bigstep") &&
             doc.at("bigstep").contains("derivation"))
      doc = doc.at("bigstep").at("derivation");
    d = derivation_from_json(doc);
  } catch (const std::exception& ex) {
    std::cerr << ex.what() << "\n";
    return kExitUsage;
  }
  CheckResult r = check_derivation(d);
  Json line{{"valid", r.ok}};
  if (!r.ok) {
    line["path"] = r.path;
    line["reason"] = r.reason;
  }
  std::cout << canonical_dump(line) << "\n";
  return r.ok ? kExitOk : kExitPropertyFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpreter workbench for a sequential Core-Erlang subset"};
  app.require_subcommand(1);

  EvalOptions eval_opt;
  CLI::App* eval_cmd =
      app.add_subcommand("eval", "evaluate a program with one or all engines");
  eval_cmd->add_option("--engine", eval_opt.engine, "bigstep|pretty|fbs|all")
      ->check(CLI::IsMember({"bigstep", "pretty", "fbs", "all"}));
  eval_cmd->add_option("--fuel", eval_opt.fuel, "fbs clock (default 1000)");
  eval_cmd->add_option("--depth", eval_opt.depth,
                       "search/pretty depth limit (default 1000)");
  eval_cmd->add_option("-e,--expr", eval_opt.inline_src, "inline source");
  eval_cmd->add_option("input", eval_opt.path, "program file (or -)");
  eval_cmd->add_option("--emit", eval_opt.emit,
                       "result|trace|derivation|rule-trace")
      ->delimiter(',');
  eval_cmd->add_option("--format", eval_opt.format, "json|text")
      ->check(CLI::IsMember({"json", "text"}));

  EvalOptions diff_opt;
  std::string diff_corpus;
  CLI::App* diff_cmd =
      app.add_subcommand("diff", "run all engines and compare outcomes");
  diff_cmd->add_option("--fuel", diff_opt.fuel, "fbs clock");
  diff_cmd->add_option("--depth", diff_opt.depth, "depth limit");
  diff_cmd->add_option("-e,--expr", diff_opt.inline_src, "inline source");
  diff_cmd->add_option("input", diff_opt.path, "program file (or -)");
  diff_cmd->add_option("--corpus", diff_corpus,
                       "corpus file, one program per line");

  FuzzOptions fuzz_opt;
  CLI::App* fuzz_cmd =
      app.add_subcommand("fuzz", "differential-test generated programs");
  fuzz_cmd->add_option("--seed", fuzz_opt.seed, "generator seed");
  fuzz_cmd->add_option("--count", fuzz_opt.count, "number of programs")
      ->check(CLI::PositiveNumber);
  fuzz_cmd->add_option("--max-size", fuzz_opt.max_size, "node budget");
  fuzz_cmd->add_option("--max-int", fuzz_opt.max_int, "integer bound");
  fuzz_cmd->add_flag("--pure", fuzz_opt.pure, "exclude effectful builtins");
  fuzz_cmd->add_option("--save", fuzz_opt.save_path,
                       "write generated programs to a corpus file");
  fuzz_cmd->add_option("--fuel", fuzz_opt.fuel, "fbs clock");
  fuzz_cmd->add_option("--depth", fuzz_opt.depth, "depth limit");

  EquivOptions equiv_opt;
  CLI::App* equiv_cmd =
      app.add_subcommand("equiv", "check the expression equivalence laws");
  equiv_cmd->add_option("--law", equiv_opt.law, "wrap|swap")
      ->check(CLI::IsMember({"wrap", "swap"}));
  equiv_cmd->add_option("-e,--expr", equiv_opt.inline_src, "inline source");
  equiv_cmd->add_option("--second", equiv_opt.second_src,
                        "second expression (swap law)");
  equiv_cmd->add_option("--count", equiv_opt.count,
                        "check generated programs instead");
  equiv_cmd->add_option("--seed", equiv_opt.seed, "generator seed");
  equiv_cmd->add_option("--fuel", equiv_opt.fuel, "fbs clock");

  std::string check_path;
  CLI::App* check_cmd =
      app.add_subcommand("check", "validate a derivation JSON document");
  check_cmd->add_option("input", check_path, "derivation file (or -)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (eval_cmd->parsed()) return cmd_eval(eval_opt);
  if (diff_cmd->parsed()) return cmd_diff(diff_opt, diff_corpus);
  if (fuzz_cmd->parsed()) return cmd_fuzz(fuzz_opt);
  if (equiv_cmd->parsed()) return cmd_equiv(equiv_opt);
  if (check_cmd->parsed()) return cmd_check(check_path);
  return kExitUsage;
}
