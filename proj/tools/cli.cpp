#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "kindred/corpus.hpp"
#include "kindred/diagnostic.hpp"
#include "kindred/h98.hpp"
#include "kindred/oracle.hpp"
#include "kindred/poly.hpp"
#include "kindred/surface.hpp"
#include "kindred/trace.hpp"

namespace kindred {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Options {
  std::string mode = "h98";
  std::string emit = "kinds";
  bool trace = false;
  int depth = 2;
  std::string file;
  std::string json_out;
};

struct Source {
  std::string name;
  std::string text;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Source read_source(const std::string& file,
                   const std::optional<std::string>& stdin_text) {
  if (file == "-") return {"<stdin>", stdin_text.value_or("")};
  std::ifstream in(file, std::ios::binary);
  if (!in) throw UsageError(fmt::format("cannot read {}", file));
  std::ostringstream text;
  text << in.rdbuf();
  return {file, text.str()};
}

int exit_code_for(const KindError& e) {
  return is_syntax_error(e.code()) ? kExitUsage : kExitFailure;
}

struct Inference {
  std::vector<TyConKind> kinds;
  std::vector<ElabDecl> elab;
};

Inference infer(const Program& p, Mode mode, Trace* trace) {
  if (mode == Mode::kH98) return {run_h98(p, trace).kinds, {}};
  PolyResult r = run_poly(p, trace);
  return {std::move(r.kinds), std::move(r.elab)};
}

nlohmann::ordered_json json_document(Mode mode,
                                     const std::optional<Inference>& result,
                                     const KindError* error) {
  nlohmann::ordered_json doc;
  doc["mode"] = std::string(mode_name(mode));
  doc["tycons"] = nlohmann::ordered_json::array();
  if (result) {
    for (const TyConKind& tk : result->kinds) {
      doc["tycons"].push_back({{"name", tk.name}, {"kind", pretty_kind(tk.kind)}});
    }
  }
  if (mode == Mode::kPoly) {
    doc["elab"] = nlohmann::ordered_json::array();
    if (result) {
      for (const ElabDecl& d : result->elab) doc["elab"].push_back(pretty_elab(d));
    }
  }
  doc["errors"] = nlohmann::ordered_json::array();
  if (error != nullptr) {
    const Diagnostic& d = error->diagnostic();
    doc["errors"].push_back({{"code", std::string(code_name(d.code))},
                             {"line", d.pos ? d.pos->line : 0},
                             {"col", d.pos ? d.pos->col : 0},
                             {"message", std::string(error->what())}});
  }
  return doc;
}

int cmd_infer(const Options& o, bool emit_output,
              const std::optional<std::string>& stdin_text,
              std::ostream& out, std::ostream& err) {
  const Mode mode = *mode_from_name(o.mode);
  if (o.emit == "elab" && mode != Mode::kPoly) {
    throw UsageError("--emit elab requires --mode poly");
  }
  const Source src = read_source(o.file, stdin_text);
  Trace trace = o.trace ? Trace(err) : Trace();
  const bool json = emit_output && o.emit == "json";
  try {
    const Program p = parse_program(src.text, mode);
    const Inference result = infer(p, mode, o.trace ? &trace : nullptr);
    if (!emit_output) return kExitOk;
    if (json) {
      out << json_document(mode, result, nullptr).dump(2) << '\n';
    } else if (o.emit == "elab") {
      for (const ElabDecl& d : result.elab) out << pretty_elab(d) << '\n';
    } else {
      for (const TyConKind& tk : result.kinds) {
        out << tk.name << " :: " << pretty_kind(tk.kind) << '\n';
      }
    }
    return kExitOk;
  } catch (const KindError& e) {
    if (json) out << json_document(mode, std::nullopt, &e).dump(2) << '\n';
    err << e.diagnostic().render(src.name) << '\n';
    return exit_code_for(e);
  }
}

std::string assignment_text(const oracle::Assignment& a,
                            const std::vector<std::string>& order) {
  std::string out;
  for (const std::string& name : order) {
    auto it = a.find(name);
    if (it == a.end()) continue;
    if (!out.empty()) out += ", ";
    out += name + " :: " + pretty_kind(it->second);
  }
  return out;
}

// Programs that would also parse in h98 mode.
bool annotation_free(const Program& p) {
  try {
    parse_program(pretty_program(p), Mode::kH98);
    return true;
  } catch (const KindError&) {
    return false;
  }
}

int cmd_oracle(const Options& o, const std::optional<std::string>& stdin_text,
               std::ostream& out, std::ostream& err) {
  const Mode mode = *mode_from_name(o.mode);
  if (o.depth < 0 || o.depth > oracle::kMaxDepth) {
    throw UsageError(fmt::format("--depth must be between 0 and {}",
                                 oracle::kMaxDepth));
  }
  const Source src = read_source(o.file, stdin_text);
  Program p;
  try {
    p = parse_program(src.text, mode);
  } catch (const KindError& e) {
    err << e.diagnostic().render(src.name) << '\n';
    return exit_code_for(e);
  }
  std::vector<std::string> order;
  for (const DataDecl& d : p.decls) order.push_back(d.name);

  std::string soundness = "skipped";
  std::string completeness = "skipped";
  std::string principality = "skipped";
  bool pass = true;
  auto fail = [&](std::string& slot, std::string text) {
    slot = std::move(text);
    pass = false;
  };

  std::optional<Inference> result;
  std::optional<KindError> error;
  try {
    result = infer(p, mode, nullptr);
  } catch (const KindError& e) {
    error = e;
  }

  if (result && mode == Mode::kH98) {
    oracle::Assignment assign;
    for (const TyConKind& tk : result->kinds) assign.emplace(tk.name, tk.kind);
    soundness = oracle::declarative_accepts(p, assign)
                    ? "ok"
                    : "violated: the oracle rejects the inferred kinds";
    if (soundness != "ok") pass = false;
    const H98Result h98 = run_h98(p);
    if (auto ce = oracle::principal_check(p, h98.schemes, o.depth)) {
      fail(principality, "counterexample " + assignment_text(ce->assignment,
                                                             ce->group));
    } else {
      principality = "ok";
    }
  } else if (result) {
    if (auto bad = oracle::check_poly_instances(p, result->kinds, o.depth)) {
      fail(soundness, "violated: rejected instance " + *bad);
    } else {
      soundness = "ok";
    }
  }
  if (error && (mode == Mode::kH98 || annotation_free(p))) {
    if (auto found = oracle::accepted_assignment(p, o.depth)) {
      fail(completeness,
           "violated: the oracle accepts " + assignment_text(*found, order));
    } else {
      completeness = "ok";
    }
  }

  out << "inference: "
      << (result ? std::string("accept") :
                   fmt::format("reject {}", code_name(error->code())))
      << '\n';
  out << "soundness: " << soundness << '\n';
  out << "completeness: " << completeness << '\n';
  out << "principality: " << principality << '\n';
  out << "verdict: " << (pass ? "pass" : "fail") << '\n';
  return pass ? kExitOk : kExitFailure;
}

int cmd_corpus(const Options& o, std::ostream& out, std::ostream& err) {
  std::vector<CorpusCase> cases;
  try {
    cases = load_corpus(o.file);
  } catch (const KindError& e) {
    err << e.diagnostic().render(o.file) << '\n';
    return kExitUsage;
  }
  const Report report = run_corpus(cases);
  out << report_table(report);
  if (!o.json_out.empty()) {
    std::ofstream json(o.json_out, std::ios::binary);
    if (!json) throw UsageError(fmt::format("cannot write {}", o.json_out));
    json << report_json(report);
  }
  return report.spec_match == report.total ? kExitOk : kExitFailure;
}

void add_mode(CLI::App* cmd, Options& o) {
  cmd->add_option("--mode", o.mode, "Inference system")
      ->required()
      ->check(CLI::IsMember({"h98", "poly"}));
}

}  // namespace

CliResult run_cli(const std::vector<std::string>& args,
                  const std::optional<std::string>& stdin_text,
                  bool trace_env) {
  std::ostringstream out;
  std::ostringstream err;
  Options o;

  CLI::App app{"Kind inference for datatype declarations", "kindred"};
  app.require_subcommand(1);

  CLI::App* infer_cmd = app.add_subcommand("infer", "Infer and print kinds");
  add_mode(infer_cmd, o);
  infer_cmd->add_option("--emit", o.emit, "Output format")
      ->check(CLI::IsMember({"kinds", "elab", "json"}));
  infer_cmd->add_flag("--trace", o.trace, "Trace inference steps to stderr");
  infer_cmd->add_option("file", o.file, "Program file, or - for stdin")
      ->required();

  CLI::App* check_cmd = app.add_subcommand("check", "Infer without output");
  add_mode(check_cmd, o);
  check_cmd->add_flag("--trace", o.trace, "Trace inference steps to stderr");
  check_cmd->add_option("file", o.file, "Program file, or - for stdin")
      ->required();

  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Check inference against the oracle");
  oracle_cmd->add_option("--depth", o.depth, "Enumeration depth")->required();
  oracle_cmd->add_option("--mode", o.mode, "Inference system")
      ->check(CLI::IsMember({"h98", "poly"}));
  oracle_cmd->add_option("file", o.file, "Program file, or - for stdin")
      ->required();

  CLI::App* corpus_cmd = app.add_subcommand("corpus", "Corpus harness");
  corpus_cmd->require_subcommand(1);
  CLI::App* run_cmd = corpus_cmd->add_subcommand("run", "Run a corpus file");
  run_cmd->add_option("path", o.file, "Corpus file")->required();
  run_cmd->add_option("--json", o.json_out, "Write the JSON report here");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return {kExitOk, out.str(), err.str()};
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    return {kExitUsage, out.str(), err.str()};
  }
  o.trace = o.trace || trace_env;

  int code = kExitOk;
  try {
    if (*infer_cmd) {
      code = cmd_infer(o, true, stdin_text, out, err);
    } else if (*check_cmd) {
      code = cmd_infer(o, false, stdin_text, out, err);
    } else if (*oracle_cmd) {
      code = cmd_oracle(o, stdin_text, out, err);
    } else {
      code = cmd_corpus(o, out, err);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n' << app.help();
    code = kExitUsage;
  }
  return {code, out.str(), err.str()};
}

}  // namespace kindred
