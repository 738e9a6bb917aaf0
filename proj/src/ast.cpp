#include "rsm/ast.hpp"

#include <algorithm>

namespace rsm {

std::string to_string(const SourceLoc& loc) {
    return std::to_string(loc.line) + ":" + std::to_string(loc.column);
}

Expr lit(Int value) { return Expr{IntLiteral{value}}; }
Expr var(std::string name) { return Expr{VarRef{std::move(name)}}; }
Expr at(std::string array, Expr i) { return Expr{IndexRef{std::move(array), std::move(i)}}; }
Expr top(std::string stack) { return Expr{TopRef{std::move(stack)}}; }

Expr binary(BinOp op, Expr lhs, Expr rhs) {
    return Expr{BinaryExpr{op, std::move(lhs), std::move(rhs)}};
}

Expr power(Expr base, Expr exponent) {
    return Expr{PowExpr{std::move(base), std::move(exponent)}};
}

std::string_view to_string(ParamKind kind) {
    switch (kind) {
    case ParamKind::Int: return "int";
    case ParamKind::IntArray: return "int[]";
    case ParamKind::Stack: return "stack";
    }
    return "?";
}

const Procedure* Program::find(std::string_view name) const {
    auto it = std::find_if(procedures.begin(), procedures.end(),
                           [&](const Procedure& p) { return p.name == name; });
    return it == procedures.end() ? nullptr : &*it;
}

} // namespace rsm
