#pragma once

#include "deob/ast.hpp"
#include "deob/source.hpp"

namespace deob {

// Canonical pretty-printer: 2-space indent, one statement per line,
// mandatory braces, globals before functions. parse(emit(a)) is
// structurally identical to a, and emit is idempotent through parse.
std::string emit_expr(const Expr& e);
std::string emit(const Ast& ast, const std::string& origin = "<emitted>");
SourceUnit emit_unit(const Ast& ast, const std::string& origin = "<emitted>");

}  // namespace deob
