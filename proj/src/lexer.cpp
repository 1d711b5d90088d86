#include "deob/token.hpp"

#include <cctype>

#include "deob/errors.hpp"

namespace deob {

namespace {

bool is_ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum((unsigned char)c) || c == '_'; }

bool is_keyword(const std::string& s) {
  return s == "int" || s == "void" || s == "if" || s == "else" ||
         s == "while" || s == "return" || s == "print";
}

struct Cursor {
  const std::string& text;
  size_t pos = 0;
  int line = 1;
  int col = 1;

  bool done() const { return pos >= text.size(); }
  char peek(size_t ahead = 0) const {
    return pos + ahead < text.size() ? text[pos + ahead] : '\0';
  }
  char advance() {
    char c = text[pos++];
    if (c == '\n') {
      line++;
      col = 1;
    } else {
      col++;
    }
    return c;
  }
  Span here(int length = 1) const {
    return Span{(int)pos, length, line, col};
  }
};

}  // namespace

std::vector<Token> tokenize(const SourceUnit& src) {
  std::vector<Token> out;
  Cursor cur{src.text};

  auto push = [&](TokenKind kind, Span span, std::string lexeme, uint64_t value = 0) {
    Token t;
    t.kind = kind;
    t.lexeme = std::move(lexeme);
    t.span = span;
    t.int_value = value;
    out.push_back(std::move(t));
  };

  while (!cur.done()) {
    char c = cur.peek();
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      cur.advance();
      continue;
    }
    if (c == '/' && cur.peek(1) == '/') {
      while (!cur.done() && cur.peek() != '\n') cur.advance();
      continue;
    }
    if (c == '/' && cur.peek(1) == '*') {
      Span start = cur.here(2);
      cur.advance();
      cur.advance();
      bool closed = false;
      while (!cur.done()) {
        if (cur.peek() == '*' && cur.peek(1) == '/') {
          cur.advance();
          cur.advance();
          closed = true;
          break;
        }
        cur.advance();
      }
      if (!closed)
        throw CompileError(CompileError::Kind::Lex, "unterminated block comment", start);
      continue;
    }
    if (std::isdigit((unsigned char)c)) {
      Span span = cur.here();
      std::string lex;
      while (!cur.done() && std::isdigit((unsigned char)cur.peek())) lex += cur.advance();
      span.length = (int)lex.size();
      // 9223372036854775808 is allowed so the parser can fold "-MIN".
      uint64_t value = 0;
      for (char d : lex) {
        uint64_t digit = (uint64_t)(d - '0');
        if (value > (UINT64_MAX - digit) / 10)
          throw CompileError(CompileError::Kind::Lex, "integer literal out of range", span);
        value = value * 10 + digit;
      }
      if (value > (uint64_t)1 << 63)
        throw CompileError(CompileError::Kind::Lex, "integer literal out of range", span);
      push(TokenKind::IntLit, span, lex, value);
      continue;
    }
    if (is_ident_start(c)) {
      Span span = cur.here();
      std::string lex;
      while (!cur.done() && is_ident_char(cur.peek())) lex += cur.advance();
      span.length = (int)lex.size();
      push(is_keyword(lex) ? TokenKind::Keyword : TokenKind::Ident, span, lex);
      continue;
    }
    switch (c) {
      case '(': case ')': case '{': case '}': case '[': case ']': case ';': case ',': {
        Span span = cur.here();
        cur.advance();
        push(TokenKind::Punct, span, std::string(1, c));
        continue;
      }
      case '+': case '-': case '*': case '/': case '%': {
        Span span = cur.here();
        cur.advance();
        push(TokenKind::Op, span, std::string(1, c));
        continue;
      }
      case '<': case '>': case '=': case '!': {
        Span span = cur.here();
        cur.advance();
        std::string lex(1, c);
        if (cur.peek() == '=') {
          cur.advance();
          lex += '=';
          span.length = 2;
        }
        push(TokenKind::Op, span, lex);
        continue;
      }
      case '&': case '|': {
        Span span = cur.here(2);
        cur.advance();
        if (cur.peek() != c)
          throw CompileError(CompileError::Kind::Lex,
                             std::string("illegal character '") + c + "'", span);
        cur.advance();
        push(TokenKind::Op, span, std::string(2, c));
        continue;
      }
      default:
        throw CompileError(CompileError::Kind::Lex,
                           std::string("illegal character '") + c + "'", cur.here());
    }
  }

  Token eof;
  eof.kind = TokenKind::Eof;
  eof.span = cur.here(0);
  out.push_back(eof);
  return out;
}

}  // namespace deob
