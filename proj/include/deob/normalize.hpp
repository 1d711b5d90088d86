#pragma once

#include "deob/ast.hpp"

namespace deob {

// Semantics-preserving simplification: constant folding under wrapping
// 64-bit arithmetic, double-negation removal, if(const)/while(0)
// simplification, empty-block cleanup. Idempotent.
Ast normalize(const Ast& ast);

// True if evaluating the expression can have a side effect (contains a call).
bool has_call(const Expr& e);

}  // namespace deob
