#include "kindred/corpus.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <sstream>

#include "kindred/poly.hpp"

namespace kindred {
namespace {

[[noreturn]] void format_error(int line, const std::string& message) {
  throw KindError(ErrorCode::kCorpusFormat, message, SourcePos{line, 1, 0});
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  return std::all_of(id.begin(), id.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
           c == '-' || c == '.';
  });
}

Expectation parse_expectation(std::string_view text, bool allow_unspecified,
                              int line) {
  Expectation e;
  text = trim(text);
  if (text == "unspecified") {
    if (!allow_unspecified) {
      format_error(line, "expect_spec cannot be unspecified");
    }
    return e;
  }
  if (text == "reject" || text.starts_with("reject ")) {
    e.tag = Expectation::Tag::kReject;
    const std::string_view code = trim(text.substr(6));
    if (code.empty()) {
      if (!allow_unspecified) {
        format_error(line, "expect_spec must name the error code");
      }
      return e;
    }
    e.code = code_from_name(code);
    if (!e.code) format_error(line, fmt::format("unknown error code {}", code));
    return e;
  }
  if (text.starts_with("accept ")) {
    e.tag = Expectation::Tag::kAccept;
    std::string_view rest = text.substr(7);
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      const std::string_view item = trim(rest.substr(0, semi));
      rest = semi == std::string_view::npos ? std::string_view{}
                                            : rest.substr(semi + 1);
      const auto colons = item.find("::");
      if (colons == std::string_view::npos) {
        format_error(line, fmt::format("expected `T :: kind`, got `{}`", item));
      }
      std::string name{trim(item.substr(0, colons))};
      try {
        e.kinds.emplace_back(std::move(name),
                             parse_kind(item.substr(colons + 2), Mode::kPoly));
      } catch (const KindError& err) {
        format_error(line, fmt::format("bad kind in `{}`: {}", item,
                                       err.diagnostic().message));
      }
    }
    if (e.kinds.empty()) format_error(line, "accept lists no kinds");
    return e;
  }
  format_error(line, fmt::format("unrecognized expectation `{}`", text));
}

std::string parse_quoted(std::string_view text, int line) {
  text = trim(text);
  if (text.size() < 2 || text.front() != '"' || text.back() != '"') {
    format_error(line, "expected a double-quoted string");
  }
  std::string out;
  for (std::size_t i = 1; i + 1 < text.size(); ++i) {
    if (text[i] == '\\' && i + 2 < text.size()) ++i;
    out += text[i];
  }
  return out;
}

struct PendingCase {
  CorpusCase c;
  std::map<std::string, int> seen;
};

void finish(PendingCase& pc, std::vector<CorpusCase>& out) {
  for (const char* key : {"mode", "source", "expect_spec", "expect_ghc"}) {
    if (!pc.seen.contains(key)) {
      format_error(pc.c.line,
                   fmt::format("case {} is missing `{}`", pc.c.id, key));
    }
  }
  try {
    parse_program(pc.c.source, pc.c.mode);
  } catch (const KindError& err) {
    format_error(pc.seen.at("source"),
                 fmt::format("source of case {} does not parse: {}", pc.c.id,
                             err.diagnostic().message));
  }
  out.push_back(std::move(pc.c));
}

std::string kinds_text(const std::vector<TyConKind>& kinds) {
  std::string out;
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i > 0) out += "; ";
    out += kinds[i].name + " :: " + pretty_kind(kinds[i].kind);
  }
  return out;
}

}  // namespace

std::vector<CorpusCase> parse_corpus(std::string_view text) {
  std::vector<std::string> lines;
  {
    std::string buf{text};
    std::istringstream in(buf);
    for (std::string l; std::getline(in, l);) lines.push_back(std::move(l));
  }

  std::vector<CorpusCase> out;
  std::optional<PendingCase> cur;
  std::map<std::string, int> ids;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const int lineno = static_cast<int>(i) + 1;
    const std::string_view line = trim(lines[i]);
    if (line.empty() || line.front() == '#') continue;

    if (line.front() == '[') {
      if (!line.starts_with("[case ") || line.back() != ']') {
        format_error(lineno, "expected `[case <id>]`");
      }
      std::string id{trim(line.substr(6, line.size() - 7))};
      if (!valid_id(id)) format_error(lineno, fmt::format("bad case id `{}`", id));
      if (auto prev = ids.find(id); prev != ids.end()) {
        format_error(lineno, fmt::format("duplicate case id {} (first at line {})",
                                         id, prev->second));
      }
      ids.emplace(id, lineno);
      if (cur) finish(*cur, out);
      cur.emplace();
      cur->c.id = std::move(id);
      cur->c.line = lineno;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      format_error(lineno, "expected `key = value`");
    }
    if (!cur) format_error(lineno, "field outside of a case block");
    const std::string key{trim(line.substr(0, eq))};
    std::string_view value = trim(line.substr(eq + 1));
    if (!cur->seen.emplace(key, lineno).second) {
      format_error(lineno, fmt::format("duplicate field `{}`", key));
    }

    if (key == "mode") {
      auto mode = mode_from_name(value);
      if (!mode) format_error(lineno, fmt::format("unknown mode `{}`", value));
      cur->c.mode = *mode;
    } else if (key == "source") {
      if (!value.starts_with("\"\"\"")) {
        format_error(lineno, "source must be a \"\"\" block");
      }
      std::string body{value.substr(3)};
      std::size_t j = i;
      for (;;) {
        const auto close = body.find("\"\"\"");
        if (close != std::string::npos) {
          if (!trim(std::string_view(body).substr(close + 3)).empty()) {
            format_error(static_cast<int>(j) + 1,
                         "text after the closing \"\"\"");
          }
          body.resize(close);
          break;
        }
        if (++j == lines.size()) {
          format_error(lineno, "unterminated \"\"\" block");
        }
        body += '\n';
        body += lines[j];
      }
      if (!body.empty() && body.front() == '\n') body.erase(0, 1);
      cur->c.source = std::move(body);
      i = j;
    } else if (key == "expect_spec") {
      cur->c.expect_spec = parse_expectation(value, false, lineno);
    } else if (key == "expect_ghc") {
      cur->c.expect_ghc = parse_expectation(value, true, lineno);
    } else if (key == "note") {
      cur->c.note = parse_quoted(value, lineno);
    } else {
      format_error(lineno, fmt::format("unknown field `{}`", key));
    }
  }
  if (cur) finish(*cur, out);
  return out;
}

std::vector<CorpusCase> load_corpus(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw KindError(ErrorCode::kCorpusFormat,
                    fmt::format("cannot read corpus file {}", path));
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_corpus(text.str());
}

Outcome run_case(const CorpusCase& c) {
  Outcome out;
  try {
    const Program p = parse_program(c.source, c.mode);
    out.kinds = c.mode == Mode::kH98 ? run_h98(p).kinds : run_poly(p).kinds;
    out.accepted = true;
  } catch (const KindError& err) {
    out.kinds.clear();
    out.error = err.diagnostic();
  }
  return out;
}

bool satisfies(const Outcome& actual, const Expectation& expected) {
  switch (expected.tag) {
    case Expectation::Tag::kUnspecified:
      return true;
    case Expectation::Tag::kReject:
      return !actual.accepted &&
             (!expected.code || actual.error->code == *expected.code);
    case Expectation::Tag::kAccept:
      if (!actual.accepted || actual.kinds.size() != expected.kinds.size()) {
        return false;
      }
      for (const auto& [name, kind] : expected.kinds) {
        auto it = std::find_if(
            actual.kinds.begin(), actual.kinds.end(),
            [&](const TyConKind& tk) { return tk.name == name; });
        if (it == actual.kinds.end() ||
            !(canonicalize(it->kind) == canonicalize(kind))) {
          return false;
        }
      }
      return true;
  }
  return false;
}

std::string describe(const Outcome& o) {
  if (o.accepted) return "accept " + kinds_text(o.kinds);
  return fmt::format("reject {}", code_name(o.error->code));
}

std::string_view divergence_name(Divergence d) {
  switch (d) {
    case Divergence::kNo:
      return "no";
    case Divergence::kYes:
      return "yes";
    case Divergence::kUnknown:
      return "unknown";
  }
  return "unknown";
}

Report run_corpus(const std::vector<CorpusCase>& cases) {
  Report r;
  for (const CorpusCase& c : cases) {
    CaseResult res{c.id, c.mode, run_case(c), false, Divergence::kUnknown};
    res.spec_match = satisfies(res.actual, c.expect_spec);
    if (c.expect_ghc.tag != Expectation::Tag::kUnspecified) {
      res.ghc_divergence = satisfies(res.actual, c.expect_ghc)
                               ? Divergence::kNo
                               : Divergence::kYes;
    }
    r.cases.push_back(std::move(res));
  }
  std::sort(r.cases.begin(), r.cases.end(),
            [](const CaseResult& a, const CaseResult& b) { return a.id < b.id; });
  r.total = r.cases.size();
  for (const CaseResult& c : r.cases) {
    if (c.spec_match) ++r.spec_match;
    if (c.ghc_divergence == Divergence::kYes) ++r.divergences;
    if (c.ghc_divergence == Divergence::kUnknown) ++r.unknown;
  }
  return r;
}

std::string report_json(const Report& r) {
  nlohmann::ordered_json doc;
  doc["cases"] = nlohmann::ordered_json::array();
  for (const CaseResult& c : r.cases) {
    nlohmann::ordered_json item;
    item["id"] = c.id;
    item["actual"] = describe(c.actual);
    item["spec_match"] = c.spec_match;
    item["ghc_divergence"] = std::string(divergence_name(c.ghc_divergence));
    doc["cases"].push_back(std::move(item));
  }
  doc["summary"] = {{"total", r.total},
                    {"spec_match", r.spec_match},
                    {"divergences", r.divergences},
                    {"unknown", r.unknown}};
  return doc.dump(2) + '\n';
}

std::string report_table(const Report& r) {
  std::size_t width = 2;
  for (const CaseResult& c : r.cases) width = std::max(width, c.id.size());
  std::string out = fmt::format("{:<{}}  {:<4}  {:<5}  {:<7}  {}\n", "id",
                                width, "mode", "spec", "ghc", "actual");
  for (const CaseResult& c : r.cases) {
    out += fmt::format("{:<{}}  {:<4}  {:<5}  {:<7}  {}\n", c.id, width,
                       mode_name(c.mode), c.spec_match ? "ok" : "FAIL",
                       divergence_name(c.ghc_divergence), describe(c.actual));
  }
  out += fmt::format(
      "{} cases, {} as expected, {} diverge from GHC, {} unknown\n",
      r.total, r.spec_match, r.divergences, r.unknown);
  return out;
}

}  // namespace kindred
