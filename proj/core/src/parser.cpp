#include <fmt/format.h>

#include <set>
#include <utility>

#include "kindred/surface.hpp"
#include "lexer.hpp"

namespace kindred {
namespace {

using detail::Tok;
using detail::Token;

class Parser {
 public:
  Parser(std::string_view text, Mode mode)
      : tokens_(detail::lex(text)), mode_(mode) {}

  Program program() {
    Program p;
    std::vector<std::pair<std::string, Signature>> sigs;
    while (!at(Tok::kEof)) {
      if (accept(Tok::kSemi)) continue;
      if (at(Tok::kSig)) {
        const SourcePos pos = peek().pos;
        if (mode_ == Mode::kH98) {
          throw KindError(ErrorCode::kAnnotationInH98,
                          "kind signatures require poly mode", pos);
        }
        next();
        std::string name = expect(Tok::kUcid).text;
        expect(Tok::kDColon);
        Kind k = kind();
        sigs.emplace_back(std::move(name), Signature{std::move(k), pos});
        continue;
      }
      p.decls.push_back(decl());
    }
    validate(p, sigs);
    return p;
  }

  Kind standalone_kind() {
    Kind k = kind();
    expect(Tok::kEof);
    return k;
  }

  SurfaceType standalone_type() {
    SurfaceType t = type();
    expect(Tok::kEof);
    return t;
  }

 private:
  const Token& peek() const { return tokens_[cursor_]; }
  bool at(Tok t) const { return peek().kind == t; }

  const Token& next() {
    const Token& t = tokens_[cursor_];
    if (t.kind != Tok::kEof) ++cursor_;
    return t;
  }

  bool accept(Tok t) {
    if (!at(t)) return false;
    next();
    return true;
  }

  const Token& expect(Tok t) {
    if (!at(t)) {
      throw KindError(ErrorCode::kParseError,
                      fmt::format("expected {} but found {}", detail::describe(t),
                                  found()),
                      peek().pos);
    }
    return next();
  }

  std::string found() const {
    if (at(Tok::kEof)) return std::string(detail::describe(Tok::kEof));
    return fmt::format("'{}'", peek().text);
  }

  [[noreturn]] void fail(std::string_view what) const {
    throw KindError(ErrorCode::kParseError,
                    fmt::format("expected {} but found {}", what, found()),
                    peek().pos);
  }

  void require_poly(SourcePos pos, std::string_view what) const {
    if (mode_ == Mode::kH98) {
      throw KindError(ErrorCode::kAnnotationInH98,
                      fmt::format("{} require poly mode", what), pos);
    }
  }

  DataDecl decl() {
    DataDecl d;
    d.pos = peek().pos;
    expect(Tok::kData);
    d.name = expect(Tok::kUcid).text;
    while (at(Tok::kLcid) || at(Tok::kLParen)) d.params.push_back(binder());
    if (accept(Tok::kEquals)) {
      d.ctors.push_back(ctor());
      while (accept(Tok::kBar)) d.ctors.push_back(ctor());
    }
    return d;
  }

  Param binder() {
    Param p;
    p.pos = peek().pos;
    if (at(Tok::kLcid)) {
      p.name = next().text;
      return p;
    }
    expect(Tok::kLParen);
    require_poly(p.pos, "kind-annotated binders");
    p.name = expect(Tok::kLcid).text;
    expect(Tok::kDColon);
    p.annotation = kind();
    expect(Tok::kRParen);
    return p;
  }

  DataCon ctor() {
    DataCon c;
    c.pos = peek().pos;
    c.name = expect(Tok::kUcid).text;
    while (starts_atype()) c.args.push_back(atype());
    return c;
  }

  bool starts_atype() const {
    return at(Tok::kLcid) || at(Tok::kUcid) || at(Tok::kLParen);
  }

  SurfaceType type() {
    if (at(Tok::kForall)) {
      const SourcePos pos = peek().pos;
      require_poly(pos, "forall types");
      next();
      std::vector<std::pair<std::string, SourcePos>> binders;
      do {
        const Token& t = expect(Tok::kLcid);
        binders.emplace_back(t.text, t.pos);
      } while (at(Tok::kLcid));
      expect(Tok::kDot);
      SurfaceType body = type();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        const SourcePos at_pos = it == binders.rend() - 1 ? pos : it->second;
        body = SurfaceType::forall(it->first, std::move(body), at_pos);
      }
      return body;
    }
    SurfaceType lhs = btype();
    if (at(Tok::kArrow)) {
      next();
      SurfaceType rhs = type();
      const SourcePos pos = lhs.pos();
      return SurfaceType::arrow(std::move(lhs), std::move(rhs), pos);
    }
    return lhs;
  }

  SurfaceType btype() {
    if (!starts_atype()) fail("a type");
    SurfaceType t = atype();
    while (starts_atype()) {
      const SourcePos pos = t.pos();
      t = SurfaceType::app(std::move(t), atype(), pos);
    }
    return t;
  }

  SurfaceType atype() {
    const Token& t = peek();
    if (t.kind == Tok::kLcid) {
      next();
      return SurfaceType::var(t.text, t.pos);
    }
    if (t.kind == Tok::kUcid) {
      next();
      return SurfaceType::con(t.text, t.pos);
    }
    if (t.kind != Tok::kLParen) fail("a type");
    const SourcePos open = t.pos;
    next();
    SurfaceType inner = type();
    if (at(Tok::kDColon)) {
      require_poly(peek().pos, "kind annotations");
      next();
      Kind k = kind();
      expect(Tok::kRParen);
      return SurfaceType::annot(std::move(inner), std::move(k), open);
    }
    if (!at(Tok::kRParen)) {
      throw KindError(
          ErrorCode::kParseError,
          fmt::format("unclosed '(' opened at {}:{}: expected ')' but found {}",
                      open.line, open.col, found()),
          peek().pos);
    }
    next();
    return inner;
  }

  Kind kind() {
    if (at(Tok::kForall)) {
      const SourcePos pos = peek().pos;
      require_poly(pos, "kind quantifiers");
      next();
      std::vector<std::string> binders;
      do {
        binders.push_back(expect(Tok::kLcid).text);
      } while (at(Tok::kLcid));
      expect(Tok::kDot);
      Kind body = kind();
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        body = Kind::forall(*it, std::move(body));
      }
      return body;
    }
    Kind lhs = akind();
    if (accept(Tok::kArrow)) return Kind::arrow(std::move(lhs), kind());
    return lhs;
  }

  Kind akind() {
    const Token& t = peek();
    if (t.kind == Tok::kStar) {
      next();
      return Kind::star();
    }
    if (t.kind == Tok::kLcid) {
      require_poly(t.pos, "kind variables");
      next();
      return Kind::var(t.text);
    }
    if (t.kind == Tok::kLParen) {
      next();
      Kind k = kind();
      expect(Tok::kRParen);
      return k;
    }
    fail("a kind");
  }

  void validate(Program& p,
                std::vector<std::pair<std::string, Signature>>& sigs) const {
    std::set<std::string> tycons;
    std::set<std::string> datacons;
    for (const DataDecl& d : p.decls) {
      if (!tycons.insert(d.name).second) {
        throw KindError(ErrorCode::kDuplicateTyCon,
                        fmt::format("type constructor {} is declared twice",
                                    d.name),
                        d.pos);
      }
      std::set<std::string> params;
      for (const Param& prm : d.params) {
        if (!params.insert(prm.name).second) {
          throw KindError(ErrorCode::kDuplicateParam,
                          fmt::format("parameter {} of {} is bound twice",
                                      prm.name, d.name),
                          prm.pos);
        }
      }
      for (const DataCon& c : d.ctors) {
        if (!datacons.insert(c.name).second) {
          throw KindError(ErrorCode::kDuplicateDataCon,
                          fmt::format("data constructor {} is declared twice",
                                      c.name),
                          c.pos);
        }
      }
    }
    for (auto& [name, sig] : sigs) {
      if (!tycons.contains(name)) {
        throw KindError(ErrorCode::kOrphanSignature,
                        fmt::format("signature for undeclared type {}", name),
                        sig.pos);
      }
      if (!p.sigs.emplace(name, std::move(sig)).second) {
        throw KindError(ErrorCode::kDuplicateSignature,
                        fmt::format("type {} has two signatures", name),
                        sig.pos);
      }
    }
  }

  std::vector<Token> tokens_;
  std::size_t cursor_ = 0;
  Mode mode_;
};

}  // namespace

Program parse_program(std::string_view text, Mode mode) {
  return Parser(text, mode).program();
}

Kind parse_kind(std::string_view text, Mode mode) {
  return Parser(text, mode).standalone_kind();
}

SurfaceType parse_type(std::string_view text, Mode mode) {
  return Parser(text, mode).standalone_type();
}

}  // namespace kindred
