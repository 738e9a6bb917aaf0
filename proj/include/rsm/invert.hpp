#pragma once

// Source-level program inversion.
//
// invertProgram(P) run Forward behaves exactly like P run Backward, including
// which runtime error is raised. Inversion is syntactic and an involution.

#include "rsm/ast.hpp"

namespace rsm {

/// Inverts one statement on its own: the statement sequence of every nested
/// block is reversed, += and -= swap, *= and *= inv() swap, if/fi and
/// from/until swap their predicates, iterate and local/delocal swap their
/// bounds, push and pop swap, and call and uncall swap.
Stmt invertStatement(const Stmt& stmt);

Block invertBlock(const Block& block);

/// Inverts every procedure body. Calls keep their form because the callee is
/// inverted too: `call f` in the inverse program reaches f's inverse.
Program invertProgram(const Program& program);

} // namespace rsm
