#include "rsm/invert.hpp"

#include <algorithm>
#include <type_traits>

namespace rsm {

namespace {

UpdateOp inverseOp(UpdateOp op) {
    switch (op) {
    case UpdateOp::Add: return UpdateOp::Sub;
    case UpdateOp::Sub: return UpdateOp::Add;
    case UpdateOp::Mul: return UpdateOp::MulInv;
    case UpdateOp::MulInv: return UpdateOp::Mul;
    }
    return op;
}

Stmt invert(const Stmt& stmt, bool flipCalls);

Block invert(const Block& block, bool flipCalls) {
    Block out;
    out.reserve(block.size());
    for (auto it = block.rbegin(); it != block.rend(); ++it) out.push_back(invert(*it, flipCalls));
    return out;
}

Stmt invert(const Stmt& stmt, bool flipCalls) {
    auto node = std::visit(
        [&](const auto& s) -> decltype(Stmt::node) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Update>) {
                return Update{s.target, inverseOp(s.op), s.rhs, s.modulus};
            } else if constexpr (std::is_same_v<T, IfFi>) {
                return IfFi{s.assertion, invert(s.thenBody, flipCalls),
                            invert(s.elseBody, flipCalls), s.test};
            } else if constexpr (std::is_same_v<T, FromUntil>) {
                return FromUntil{s.exit, invert(s.body, flipCalls), s.entry};
            } else if constexpr (std::is_same_v<T, Iterate>) {
                return Iterate{s.counter, s.to, s.from, !s.descending, invert(s.body, flipCalls)};
            } else if constexpr (std::is_same_v<T, LocalBlock>) {
                return LocalBlock{s.name, s.final, invert(s.body, flipCalls), s.init};
            } else if constexpr (std::is_same_v<T, Call>) {
                return Call{flipCalls ? !s.uncall : s.uncall, s.target, s.args};
            } else {
                return StackOp{!s.pop, s.target, s.stack};
            }
        },
        stmt.node);
    return Stmt{std::move(node), stmt.loc};
}

} // namespace

Stmt invertStatement(const Stmt& stmt) { return invert(stmt, true); }

Block invertBlock(const Block& block) { return invert(block, true); }

Program invertProgram(const Program& program) {
    Program out;
    out.procedures.reserve(program.procedures.size());
    for (const auto& proc : program.procedures)
        out.procedures.push_back(Procedure{proc.name, proc.params, invert(proc.body, false), proc.loc});
    return out;
}

} // namespace rsm
