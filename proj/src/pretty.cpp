#include <sstream>
#include <string>

#include "rsm/syntax.hpp"

namespace rsm {

namespace {

constexpr int kPrecCompare = 1;
constexpr int kPrecAdd = 2;
constexpr int kPrecMul = 3;
constexpr int kPrecPow = 4;
constexpr int kPrecAtom = 5;

int precedence(const Expr& e) {
    if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
        switch (b->op) {
        case BinOp::Add:
        case BinOp::Sub: return kPrecAdd;
        case BinOp::Mul: return kPrecMul;
        default: return kPrecCompare;
        }
    }
    if (std::holds_alternative<PowExpr>(e.node)) return kPrecPow;
    // A negative literal prints with a leading minus, which the parser folds
    // back into the literal only when it is not the left operand of `^`.
    if (const auto* l = std::get_if<IntLiteral>(&e.node); l && l->value < 0) return kPrecPow;
    return kPrecAtom;
}

std::string_view symbol(BinOp op) {
    switch (op) {
    case BinOp::Add: return "+";
    case BinOp::Sub: return "-";
    case BinOp::Mul: return "*";
    case BinOp::Eq: return "=";
    case BinOp::Ne: return "!=";
    case BinOp::Lt: return "<";
    }
    return "?";
}

void print(std::ostream& os, const Expr& e);

void printOperand(std::ostream& os, const Expr& e, bool parens) {
    if (parens) os << '(';
    print(os, e);
    if (parens) os << ')';
}

void print(std::ostream& os, const Expr& e) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IntLiteral>) {
                os << n.value;
            } else if constexpr (std::is_same_v<T, VarRef>) {
                os << n.name;
            } else if constexpr (std::is_same_v<T, IndexRef>) {
                os << n.array << '[';
                print(os, *n.index);
                os << ']';
            } else if constexpr (std::is_same_v<T, TopRef>) {
                os << "top(" << n.stack << ')';
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                const int p = precedence(e);
                // Left associative: a right operand at the same level needs parens.
                printOperand(os, *n.lhs, precedence(*n.lhs) < p);
                os << ' ' << symbol(n.op) << ' ';
                printOperand(os, *n.rhs, precedence(*n.rhs) <= p);
            } else if constexpr (std::is_same_v<T, PowExpr>) {
                const Expr& base = *n.base;
                const auto* negLit = std::get_if<IntLiteral>(&base.node);
                bool baseParens = precedence(base) < kPrecAtom && !(negLit && negLit->value < 0);
                printOperand(os, base, baseParens);
                os << " ^ ";
                printOperand(os, *n.exponent, precedence(*n.exponent) < kPrecPow);
            }
        },
        e.node);
}

void printLValue(std::ostream& os, const LValue& lv) {
    os << lv.name;
    if (lv.index) {
        os << '[';
        print(os, **lv.index);
        os << ']';
    }
}

void printBlock(std::ostream& os, const Block& block, int indent);

void printStmt(std::ostream& os, const Stmt& s, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, Update>) {
                os << pad;
                printLValue(os, n.target);
                switch (n.op) {
                case UpdateOp::Add: os << " += "; break;
                case UpdateOp::Sub: os << " -= "; break;
                case UpdateOp::Mul: os << " *= "; break;
                case UpdateOp::MulInv: os << " *= inv("; break;
                }
                print(os, n.rhs);
                if (n.op == UpdateOp::MulInv) os << ')';
                if (n.modulus) os << " mod " << *n.modulus;
                os << '\n';
            } else if constexpr (std::is_same_v<T, IfFi>) {
                os << pad << "if ";
                print(os, n.test);
                os << " then\n";
                printBlock(os, n.thenBody, indent + 1);
                if (!n.elseBody.empty()) {
                    os << pad << "else\n";
                    printBlock(os, n.elseBody, indent + 1);
                }
                os << pad << "fi ";
                print(os, n.assertion);
                os << '\n';
            } else if constexpr (std::is_same_v<T, FromUntil>) {
                os << pad << "from ";
                print(os, n.entry);
                os << " loop\n";
                printBlock(os, n.body, indent + 1);
                os << pad << "until ";
                print(os, n.exit);
                os << '\n';
            } else if constexpr (std::is_same_v<T, Iterate>) {
                os << pad << "iterate int " << n.counter << " = ";
                print(os, n.from);
                os << (n.descending ? " downto " : " to ");
                print(os, n.to);
                os << '\n';
                printBlock(os, n.body, indent + 1);
                os << pad << "end\n";
            } else if constexpr (std::is_same_v<T, LocalBlock>) {
                os << pad << "local int " << n.name << " = ";
                print(os, n.init);
                os << '\n';
                printBlock(os, n.body, indent + 1);
                os << pad << "delocal int " << n.name << " = ";
                print(os, n.final);
                os << '\n';
            } else if constexpr (std::is_same_v<T, Call>) {
                os << pad << (n.uncall ? "uncall " : "call ") << n.target << '(';
                for (std::size_t k = 0; k < n.args.size(); ++k) {
                    if (k) os << ", ";
                    print(os, n.args[k]);
                }
                os << ")\n";
            } else if constexpr (std::is_same_v<T, StackOp>) {
                os << pad << (n.pop ? "pop(" : "push(");
                printLValue(os, n.target);
                os << ", " << n.stack << ")\n";
            }
        },
        s.node);
}

void printBlock(std::ostream& os, const Block& block, int indent) {
    for (const auto& s : block) printStmt(os, s, indent);
}

} // namespace

std::string pretty(const Expr& expr) {
    std::ostringstream os;
    print(os, expr);
    return os.str();
}

std::string pretty(const Stmt& stmt, int indent) {
    std::ostringstream os;
    printStmt(os, stmt, indent);
    return os.str();
}

std::string pretty(const Program& program) {
    std::ostringstream os;
    bool first = true;
    for (const auto& proc : program.procedures) {
        if (!first) os << '\n';
        first = false;
        os << "procedure " << proc.name << '(';
        for (std::size_t k = 0; k < proc.params.size(); ++k) {
            const Param& p = proc.params[k];
            if (k) os << ", ";
            switch (p.kind) {
            case ParamKind::Int: os << "int " << p.name; break;
            case ParamKind::IntArray: os << "int " << p.name << "[]"; break;
            case ParamKind::Stack: os << "stack " << p.name; break;
            }
        }
        os << ")\n";
        printBlock(os, proc.body, 1);
    }
    return os.str();
}

} // namespace rsm
