#pragma once

#include <string>

namespace deob {

// Half-open byte range into a source text, with 1-based line/column of its
// start for diagnostics.
struct Span {
  int offset = 0;
  int length = 0;
  int line = 0;
  int col = 0;
};

// A piece of MiniLang source plus a label saying where it came from
// (file path or a synthetic id like "<obfuscated>").
struct SourceUnit {
  std::string text;
  std::string origin;
};

}  // namespace deob
