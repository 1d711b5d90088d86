#pragma once

#include "deob/ast.hpp"
#include "deob/token.hpp"

namespace deob {

// Recursive-descent parse of the MiniLang grammar. The returned Ast is
// validated (see validate in ast.hpp); errors surface as CompileError.
Ast parse(const std::vector<Token>& tokens);

// tokenize + parse in one step.
Ast parse_source(const SourceUnit& src);

}  // namespace deob
