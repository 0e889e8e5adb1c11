#include "lexer.hpp"

#include <fmt/format.h>

#include <cctype>

namespace kindred::detail {

std::string_view describe(Tok t) {
  switch (t) {
    case Tok::kUcid: return "constructor name";
    case Tok::kLcid: return "variable name";
    case Tok::kData: return "'data'";
    case Tok::kSig: return "'sig'";
    case Tok::kForall: return "'forall'";
    case Tok::kDColon: return "'::'";
    case Tok::kArrow: return "'->'";
    case Tok::kEquals: return "'='";
    case Tok::kBar: return "'|'";
    case Tok::kLParen: return "'('";
    case Tok::kRParen: return "')'";
    case Tok::kDot: return "'.'";
    case Tok::kStar: return "'*'";
    case Tok::kSemi: return "';'";
    case Tok::kEof: return "end of input";
  }
  return "token";
}

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

}  // namespace

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  int line = 1;
  int col = 1;

  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };

  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < text.size() && text[i + 1] == '-') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }

    const SourcePos pos{line, col, i};
    auto push = [&](Tok kind, std::size_t len) {
      out.push_back(Token{kind, std::string(text.substr(i, len)), pos});
      advance(len);
    };

    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < text.size() && ident_char(text[j])) ++j;
      const std::string_view word = text.substr(i, j - i);
      Tok kind;
      if (word == "data") {
        kind = Tok::kData;
      } else if (word == "sig") {
        kind = Tok::kSig;
      } else if (word == "forall") {
        kind = Tok::kForall;
      } else if (std::isupper(static_cast<unsigned char>(c))) {
        kind = Tok::kUcid;
      } else {
        kind = Tok::kLcid;
      }
      push(kind, j - i);
      continue;
    }

    if (text.substr(i, 2) == "::") {
      push(Tok::kDColon, 2);
      continue;
    }
    if (text.substr(i, 2) == "->") {
      push(Tok::kArrow, 2);
      continue;
    }
    switch (c) {
      case '=': push(Tok::kEquals, 1); continue;
      case '|': push(Tok::kBar, 1); continue;
      case '(': push(Tok::kLParen, 1); continue;
      case ')': push(Tok::kRParen, 1); continue;
      case '.': push(Tok::kDot, 1); continue;
      case '*': push(Tok::kStar, 1); continue;
      case ';': push(Tok::kSemi, 1); continue;
      default: break;
    }
    const unsigned char uc = static_cast<unsigned char>(c);
    throw KindError(ErrorCode::kParseError,
                    std::isprint(uc)
                        ? fmt::format("unexpected character '{}'", c)
                        : fmt::format("unexpected byte 0x{:02x}", unsigned{uc}),
                    pos);
  }
  out.push_back(Token{Tok::kEof, "", SourcePos{line, col, i}});
  return out;
}

}  // namespace kindred::detail
