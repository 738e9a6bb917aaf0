#pragma once

// Bidirectional interpreter for the reversible language.
//
// Running a procedure Backward executes the inverse computation: statements
// in reverse order, each with its inverse semantics. Every join point is
// checked at run time, so a run either succeeds deterministically in both
// directions or stops with a RuntimeError naming the failing statement.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

#include "rsm/ast.hpp"
#include "rsm/store.hpp"

namespace rsm {

enum class Direction { Forward, Backward };

constexpr Direction reverse(Direction d) {
    return d == Direction::Forward ? Direction::Backward : Direction::Forward;
}

/// Work counters. Every counted event occurs the same number of times in a
/// Forward run and in the Backward run that undoes it.
struct RunStats {
    std::uint64_t updates = 0;      // executed +=, -=, *= statements
    std::uint64_t comparisons = 0;  // evaluated control predicates and delocal checks
    std::uint64_t calls = 0;        // call and uncall statements
    std::uint64_t stackOps = 0;     // push and pop statements
    std::uint64_t kernelOps = 0;    // modular kernel operations
    bool operator==(const RunStats&) const = default;
};

enum class RuntimeErrorKind {
    FiAssertionFailed,
    FromAssertionFailed,
    DelocalMismatch,
    PopNonZeroTarget,
    IndexOutOfBounds,
    UnboundName,
    NonCoprimeModulus,
    OperandOutOfRange,
    WordOverflow,
    StackUnderflow,
    IterateAssertionFailed,  // counter or bounds changed by the body
    ArgumentChanged,         // a by-value argument changed across a call
    TypeMismatch,
    CallDepthExceeded,
};

std::string_view to_string(RuntimeErrorKind kind);

class RuntimeError : public std::runtime_error {
public:
    RuntimeError(RuntimeErrorKind kind, SourceLoc loc, const std::string& message);
    RuntimeErrorKind kind() const { return kind_; }
    SourceLoc where() const { return loc_; }

private:
    RuntimeErrorKind kind_;
    SourceLoc loc_;
};

struct RunResult {
    Store store;
    RunStats stats;
};

/// Runs `entry` on `store`. The store must bind every parameter of the entry
/// procedure to a value of the declared kind; other bindings pass through.
/// The program must have passed validate().
RunResult run(const Program& program, std::string_view entry, Store store, Direction dir);

/// Evaluates a side-effect-free expression. Comparisons yield 1 or 0, and
/// top() of an empty stack yields -1.
Int evalExpr(const Expr& expr, const Store& store);

/// Executes one statement against the bindings in `store`.
Store execStmt(const Program& program, const Stmt& stmt, Store store, Direction dir,
               RunStats* stats = nullptr);

} // namespace rsm
