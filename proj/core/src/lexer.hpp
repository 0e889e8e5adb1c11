#ifndef KINDRED_SRC_LEXER_HPP
#define KINDRED_SRC_LEXER_HPP

#include <string>
#include <string_view>
#include <vector>

#include "kindred/diagnostic.hpp"

namespace kindred::detail {

enum class Tok {
  kUcid,
  kLcid,
  kData,
  kSig,
  kForall,
  kDColon,
  kArrow,
  kEquals,
  kBar,
  kLParen,
  kRParen,
  kDot,
  kStar,
  kSemi,
  kEof,
};

struct Token {
  Tok kind = Tok::kEof;
  std::string text;
  SourcePos pos;
};

std::string_view describe(Tok t);

/// Throws KindError(PARSE_ERROR) on characters outside the token set.
std::vector<Token> lex(std::string_view text);

}  // namespace kindred::detail

#endif  // KINDRED_SRC_LEXER_HPP
