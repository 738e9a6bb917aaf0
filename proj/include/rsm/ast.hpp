#pragma once

// Abstract syntax of the reversible matcher language.
//
// Nodes are immutable values. Subtrees are shared through Box, so copying a
// Program is cheap and equality is structural (deep).

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace rsm {

using Int = std::int64_t;

/// Position of a token in the source text, 1-based. Positions do not take
/// part in structural equality: a reparsed program compares equal to the
/// original even though its statements moved.
struct SourceLoc {
    int line = 0;
    int column = 0;

    friend bool operator==(const SourceLoc&, const SourceLoc&) { return true; }
};

std::string to_string(const SourceLoc& loc);

/// Shared immutable pointer with value equality.
template <typename T>
class Box {
public:
    Box(T value) : ptr_(std::make_shared<const T>(std::move(value))) {}

    const T& operator*() const { return *ptr_; }
    const T* operator->() const { return ptr_.get(); }

    friend bool operator==(const Box& a, const Box& b) {
        return a.ptr_ == b.ptr_ || *a.ptr_ == *b.ptr_;
    }

private:
    std::shared_ptr<const T> ptr_;
};

struct Expr;

struct IntLiteral {
    Int value = 0;
    bool operator==(const IntLiteral&) const = default;
};

struct VarRef {
    std::string name;
    bool operator==(const VarRef&) const = default;
};

struct IndexRef {
    std::string array;
    Box<Expr> index;
    bool operator==(const IndexRef&) const = default;
};

struct TopRef {
    std::string stack;
    bool operator==(const TopRef&) const = default;
};

enum class BinOp { Add, Sub, Mul, Eq, Ne, Lt };

struct BinaryExpr {
    BinOp op;
    Box<Expr> lhs;
    Box<Expr> rhs;
    bool operator==(const BinaryExpr&) const = default;
};

// Only legal inside the right-hand side of a `mod q` update.
struct PowExpr {
    Box<Expr> base;
    Box<Expr> exponent;
    bool operator==(const PowExpr&) const = default;
};

struct Expr {
    std::variant<IntLiteral, VarRef, IndexRef, TopRef, BinaryExpr, PowExpr> node;
    bool operator==(const Expr&) const = default;
};

// Convenience constructors, mostly for tests and the inverter.
Expr lit(Int value);
Expr var(std::string name);
Expr at(std::string array, Expr i);
Expr top(std::string stack);
Expr binary(BinOp op, Expr lhs, Expr rhs);
Expr power(Expr base, Expr exponent);

struct LValue {
    std::string name;
    std::optional<Box<Expr>> index;
    bool operator==(const LValue&) const = default;
};

/// MulInv multiplies by the modular inverse of the right-hand side. It is the
/// inverse of Mul and only ever carries a modulus.
enum class UpdateOp { Add, Sub, Mul, MulInv };

struct Stmt;
using Block = std::vector<Stmt>;

struct Update {
    LValue target;
    UpdateOp op;
    Expr rhs;
    std::optional<std::string> modulus;
    bool operator==(const Update&) const = default;
};

struct IfFi {
    Expr test;
    Block thenBody;
    Block elseBody;
    Expr assertion;
    bool operator==(const IfFi&) const = default;
};

/// `from entry loop body until exit`: the exit test runs before each pass of
/// the body, and the entry assertion must be false after each pass.
struct FromUntil {
    Expr entry;
    Block body;
    Expr exit;
    bool operator==(const FromUntil&) const = default;
};

struct Iterate {
    std::string counter;
    Expr from;
    Expr to;
    bool descending = false;
    Block body;
    bool operator==(const Iterate&) const = default;
};

struct LocalBlock {
    std::string name;
    Expr init;
    Block body;
    Expr final;
    bool operator==(const LocalBlock&) const = default;
};

/// Arguments that are a bare variable are passed by reference. Any other
/// expression is passed through a temporary that must be unchanged on return.
struct Call {
    bool uncall = false;
    std::string target;
    std::vector<Expr> args;
    bool operator==(const Call&) const = default;
};

struct StackOp {
    bool pop = false;
    LValue target;
    std::string stack;
    bool operator==(const StackOp&) const = default;
};

struct Stmt {
    std::variant<Update, IfFi, FromUntil, Iterate, LocalBlock, Call, StackOp> node;
    SourceLoc loc;
    bool operator==(const Stmt&) const = default;
};

enum class ParamKind { Int, IntArray, Stack };

std::string_view to_string(ParamKind kind);

struct Param {
    std::string name;
    ParamKind kind;
    bool operator==(const Param&) const = default;
};

struct Procedure {
    std::string name;
    std::vector<Param> params;
    Block body;
    SourceLoc loc;
    bool operator==(const Procedure&) const = default;
};

struct Program {
    std::vector<Procedure> procedures;

    const Procedure* find(std::string_view name) const;
    bool operator==(const Program&) const = default;
};

} // namespace rsm
