#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "deob/source.hpp"

namespace deob {

enum class TokenKind {
  Keyword,   // int void if else while return print
  Ident,
  IntLit,
  Op,        // = + - * / % < <= > >= == != && || !
  Punct,     // ( ) { } [ ] ; ,
  Eof,
};

struct Token {
  TokenKind kind = TokenKind::Eof;
  std::string lexeme;
  Span span;
  // Literal value for IntLit tokens, stored unsigned so that the one past
  // INT64_MAX magnitude (needed for "-9223372036854775808") survives until
  // the parser folds the sign in.
  uint64_t int_value = 0;
};

std::vector<Token> tokenize(const SourceUnit& src);

}  // namespace deob
