#pragma once

#include <cstdint>

#include "deob/ast.hpp"

namespace deob {

// Renames every function (except main), parameter, local, and global to the
// schema f0../p0../v0../g0.. via a seeded permutation of indices, so the
// result carries no algorithm-identifying names. Comments are already gone
// after parsing. Behavior and node ids are unchanged; a fixed seed gives a
// byte-identical result.
Ast strip_identifiers(const Ast& ast, uint64_t seed);

}  // namespace deob
