#pragma once

// Front end of the reversible language: parsing, static checks, and the
// pretty printer.
//
// Grammar (whitespace-insensitive, `//` comments to end of line):
//
//   program   := procedure+
//   procedure := "procedure" IDENT "(" [param {"," param}] ")" stmt*
//   param     := ["int"] IDENT ["[" "]"] | "stack" IDENT
//   stmt      := lval ("+=" | "-=" | "*=") expr ["mod" IDENT]
//              | lval "*=" "inv" "(" expr ")" "mod" IDENT
//              | "if" expr "then" stmt* ["else" stmt*] "fi" expr
//              | "from" expr "loop" stmt* "until" expr
//              | "iterate" "int" IDENT "=" expr ("to" | "downto") expr stmt* "end"
//              | "local" "int" IDENT "=" expr stmt* "delocal" "int" IDENT "=" expr
//              | ("call" | "uncall") IDENT "(" [expr {"," expr}] ")"
//              | ("push" | "pop") "(" lval "," IDENT ")"
//   lval      := IDENT ["[" expr "]"]
//
// Expression precedence, loosest first: `= != <`, `+ -`, `*`, `^` (right
// associative), unary minus. A parameter without a type keyword inherits
// the kind of the previous parameter, as in `procedure f(int T[], P[], s)`.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsm/ast.hpp"

namespace rsm {

class ParseError : public std::runtime_error {
public:
    ParseError(SourceLoc loc, const std::string& message);
    SourceLoc where() const { return loc_; }

private:
    SourceLoc loc_;
};

enum class StaticErrorKind {
    DuplicateProcedure,
    DuplicateParameter,
    UnknownProcedure,
    ArityMismatch,
    KindMismatch,
    UnknownVariable,
    ShadowedName,
    DuplicateArgument,
    UpdateReadsTarget,  // x += e where x occurs in e
    SelfReference,      // local/iterate bounds mentioning the bound name
    MissingModulus,     // *= without `mod q`
    MisplacedPower,     // ^ outside the rhs of a modular update
};

std::string_view to_string(StaticErrorKind kind);

struct StaticError {
    StaticErrorKind kind;
    std::string message;
    SourceLoc loc;
};

std::string to_string(const StaticError& error);

class StaticCheckFailed : public std::runtime_error {
public:
    explicit StaticCheckFailed(std::vector<StaticError> errors);
    const std::vector<StaticError>& errors() const { return errors_; }

private:
    std::vector<StaticError> errors_;
};

/// Syntax only; no static checks.
Program parseSyntax(std::string_view source);

/// Parses and validates. Throws ParseError or StaticCheckFailed.
Program parse(std::string_view source);

std::vector<StaticError> validate(const Program& program);

std::string pretty(const Program& program);
std::string pretty(const Stmt& stmt, int indent = 0);
std::string pretty(const Expr& expr);

} // namespace rsm
