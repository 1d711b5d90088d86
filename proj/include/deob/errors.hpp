#pragma once

#include <stdexcept>
#include <string>

#include "deob/source.hpp"

namespace deob {

// Frontend failure. The kind mirrors the stage that rejected the input:
// Lex for illegal characters / unterminated comments, Parse for grammar
// violations, Name for unresolved identifiers, Duplicate for redeclaration.
class CompileError : public std::runtime_error {
 public:
  enum class Kind { Lex, Parse, Name, Duplicate };

  CompileError(Kind kind, std::string message, Span span)
      : std::runtime_error(format(kind, message, span)),
        kind(kind),
        span(span),
        detail(std::move(message)) {}

  Kind kind;
  Span span;
  std::string detail;

  static std::string format(Kind kind, const std::string& message, Span span) {
    const char* tag = "error";
    switch (kind) {
      case Kind::Lex: tag = "lex error"; break;
      case Kind::Parse: tag = "parse error"; break;
      case Kind::Name: tag = "name error"; break;
      case Kind::Duplicate: tag = "duplicate error"; break;
    }
    return std::string(tag) + " at line " + std::to_string(span.line) + ":" +
           std::to_string(span.col) + ": " + message;
  }
};

}  // namespace deob
