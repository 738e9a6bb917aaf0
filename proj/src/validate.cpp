#include <map>
#include <set>
#include <string>
#include <vector>

#include "rsm/syntax.hpp"

namespace rsm {

std::string_view to_string(StaticErrorKind kind) {
    switch (kind) {
    case StaticErrorKind::DuplicateProcedure: return "DuplicateProcedure";
    case StaticErrorKind::DuplicateParameter: return "DuplicateParameter";
    case StaticErrorKind::UnknownProcedure: return "UnknownProcedure";
    case StaticErrorKind::ArityMismatch: return "ArityMismatch";
    case StaticErrorKind::KindMismatch: return "KindMismatch";
    case StaticErrorKind::UnknownVariable: return "UnknownVariable";
    case StaticErrorKind::ShadowedName: return "ShadowedName";
    case StaticErrorKind::DuplicateArgument: return "DuplicateArgument";
    case StaticErrorKind::UpdateReadsTarget: return "UpdateReadsTarget";
    case StaticErrorKind::SelfReference: return "SelfReference";
    case StaticErrorKind::MissingModulus: return "MissingModulus";
    case StaticErrorKind::MisplacedPower: return "MisplacedPower";
    }
    return "?";
}

std::string to_string(const StaticError& error) {
    return to_string(error.loc) + ": " + std::string(to_string(error.kind)) + ": " +
           error.message;
}

namespace {

std::string joinErrors(const std::vector<StaticError>& errors) {
    std::string out = "static check failed";
    for (const auto& e : errors) out += "\n  " + to_string(e);
    return out;
}

} // namespace

StaticCheckFailed::StaticCheckFailed(std::vector<StaticError> errors)
    : std::runtime_error(joinErrors(errors)), errors_(std::move(errors)) {}

namespace {

void collectNames(const Expr& e, std::set<std::string>& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, VarRef>) {
                out.insert(n.name);
            } else if constexpr (std::is_same_v<T, IndexRef>) {
                out.insert(n.array);
                collectNames(*n.index, out);
            } else if constexpr (std::is_same_v<T, TopRef>) {
                out.insert(n.stack);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                collectNames(*n.lhs, out);
                collectNames(*n.rhs, out);
            } else if constexpr (std::is_same_v<T, PowExpr>) {
                collectNames(*n.base, out);
                collectNames(*n.exponent, out);
            }
        },
        e.node);
}

bool mentions(const Expr& e, const std::string& name) {
    std::set<std::string> names;
    collectNames(e, names);
    return names.count(name) > 0;
}

class Checker {
public:
    explicit Checker(const Program& prog) : prog_(prog) {}

    std::vector<StaticError> run() {
        std::set<std::string> seen;
        for (const auto& proc : prog_.procedures) {
            if (!seen.insert(proc.name).second)
                report(StaticErrorKind::DuplicateProcedure, proc.loc,
                       "procedure '" + proc.name + "' defined more than once");
        }
        for (const auto& proc : prog_.procedures) checkProcedure(proc);
        return std::move(errors_);
    }

private:
    const Program& prog_;
    std::vector<StaticError> errors_;
    std::map<std::string, ParamKind> scope_;

    void report(StaticErrorKind kind, SourceLoc loc, std::string message) {
        errors_.push_back({kind, std::move(message), loc});
    }

    void checkProcedure(const Procedure& proc) {
        scope_.clear();
        for (const auto& p : proc.params) {
            if (!scope_.emplace(p.name, p.kind).second)
                report(StaticErrorKind::DuplicateParameter, proc.loc,
                       "parameter '" + p.name + "' repeated in '" + proc.name + "'");
        }
        checkBlock(proc.body);
    }

    void checkBlock(const Block& block) {
        for (const auto& s : block) checkStmt(s);
    }

    // Expected kind of a name in a given position; reports if it differs.
    void requireKind(const std::string& name, ParamKind kind, SourceLoc loc) {
        auto it = scope_.find(name);
        if (it == scope_.end()) {
            report(StaticErrorKind::UnknownVariable, loc, "unknown variable '" + name + "'");
        } else if (it->second != kind) {
            report(StaticErrorKind::KindMismatch, loc,
                   "'" + name + "' is " + std::string(to_string(it->second)) + ", expected " +
                       std::string(to_string(kind)));
        }
    }

    // `modular` is true inside the rhs of a `mod q` update, where ^ is legal.
    void checkExpr(const Expr& e, SourceLoc loc, bool modular = false) {
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, VarRef>) {
                    requireKind(n.name, ParamKind::Int, loc);
                } else if constexpr (std::is_same_v<T, IndexRef>) {
                    requireKind(n.array, ParamKind::IntArray, loc);
                    checkExpr(*n.index, loc);
                } else if constexpr (std::is_same_v<T, TopRef>) {
                    requireKind(n.stack, ParamKind::Stack, loc);
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    bool arith = n.op == BinOp::Add || n.op == BinOp::Sub || n.op == BinOp::Mul;
                    checkExpr(*n.lhs, loc, modular && arith);
                    checkExpr(*n.rhs, loc, modular && arith);
                } else if constexpr (std::is_same_v<T, PowExpr>) {
                    if (!modular)
                        report(StaticErrorKind::MisplacedPower, loc,
                               "'^' is only allowed in the rhs of a modular update");
                    checkExpr(*n.base, loc, modular);
                    checkExpr(*n.exponent, loc);
                }
            },
            e.node);
    }

    void checkLValue(const LValue& lv, SourceLoc loc) {
        if (lv.index) {
            requireKind(lv.name, ParamKind::IntArray, loc);
            checkExpr(**lv.index, loc);
            if (mentions(**lv.index, lv.name))
                report(StaticErrorKind::UpdateReadsTarget, loc,
                       "index of '" + lv.name + "' reads '" + lv.name + "'");
        } else {
            requireKind(lv.name, ParamKind::Int, loc);
        }
    }

    // Binds `name` as an int for the duration of `body`.
    template <typename F>
    void withLocal(const std::string& name, SourceLoc loc, F&& body) {
        if (scope_.count(name)) {
            report(StaticErrorKind::ShadowedName, loc, "'" + name + "' is already in scope");
            body();
            return;
        }
        scope_.emplace(name, ParamKind::Int);
        body();
        scope_.erase(name);
    }

    void checkStmt(const Stmt& s) {
        const SourceLoc loc = s.loc;
        std::visit(
            [&](const auto& n) {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, Update>) {
                    checkLValue(n.target, loc);
                    checkExpr(n.rhs, loc, n.modulus.has_value());
                    if (mentions(n.rhs, n.target.name))
                        report(StaticErrorKind::UpdateReadsTarget, loc,
                               "'" + n.target.name + "' occurs in its own update");
                    if (n.modulus) {
                        requireKind(*n.modulus, ParamKind::Int, loc);
                        if (*n.modulus == n.target.name)
                            report(StaticErrorKind::UpdateReadsTarget, loc,
                                   "'" + n.target.name + "' is its own modulus");
                    } else if (n.op == UpdateOp::Mul || n.op == UpdateOp::MulInv) {
                        report(StaticErrorKind::MissingModulus, loc,
                               "'*=' requires 'mod q' to be reversible");
                    }
                } else if constexpr (std::is_same_v<T, IfFi>) {
                    checkExpr(n.test, loc);
                    checkBlock(n.thenBody);
                    checkBlock(n.elseBody);
                    checkExpr(n.assertion, loc);
                } else if constexpr (std::is_same_v<T, FromUntil>) {
                    checkExpr(n.entry, loc);
                    checkBlock(n.body);
                    checkExpr(n.exit, loc);
                } else if constexpr (std::is_same_v<T, Iterate>) {
                    checkExpr(n.from, loc);
                    checkExpr(n.to, loc);
                    if (mentions(n.from, n.counter) || mentions(n.to, n.counter))
                        report(StaticErrorKind::SelfReference, loc,
                               "bounds of iterate mention counter '" + n.counter + "'");
                    withLocal(n.counter, loc, [&] { checkBlock(n.body); });
                } else if constexpr (std::is_same_v<T, LocalBlock>) {
                    if (mentions(n.init, n.name) || mentions(n.final, n.name))
                        report(StaticErrorKind::SelfReference, loc,
                               "declaration of '" + n.name + "' mentions itself");
                    checkExpr(n.init, loc);
                    checkExpr(n.final, loc);
                    withLocal(n.name, loc, [&] { checkBlock(n.body); });
                } else if constexpr (std::is_same_v<T, Call>) {
                    checkCall(n, loc);
                } else if constexpr (std::is_same_v<T, StackOp>) {
                    checkLValue(n.target, loc);
                    requireKind(n.stack, ParamKind::Stack, loc);
                    if (n.target.index && mentions(**n.target.index, n.stack))
                        report(StaticErrorKind::UpdateReadsTarget, loc,
                               "index of '" + n.target.name + "' reads stack '" + n.stack + "'");
                }
            },
            s.node);
    }

    void checkCall(const Call& c, SourceLoc loc) {
        const Procedure* callee = prog_.find(c.target);
        if (!callee) {
            report(StaticErrorKind::UnknownProcedure, loc,
                   "call to unknown procedure '" + c.target + "'");
            for (const auto& a : c.args) {
                if (!std::holds_alternative<VarRef>(a.node)) checkExpr(a, loc);
            }
            return;
        }
        if (callee->params.size() != c.args.size()) {
            report(StaticErrorKind::ArityMismatch, loc,
                   "'" + c.target + "' takes " + std::to_string(callee->params.size()) +
                       " arguments, got " + std::to_string(c.args.size()));
            return;
        }
        std::set<std::string> byRef;
        for (std::size_t k = 0; k < c.args.size(); ++k) {
            const Expr& a = c.args[k];
            const ParamKind want = callee->params[k].kind;
            if (const auto* v = std::get_if<VarRef>(&a.node)) {
                requireKind(v->name, want, loc);
                if (!byRef.insert(v->name).second)
                    report(StaticErrorKind::DuplicateArgument, loc,
                           "'" + v->name + "' passed more than once");
            } else if (want != ParamKind::Int) {
                report(StaticErrorKind::KindMismatch, loc,
                       "argument " + std::to_string(k + 1) + " of '" + c.target +
                           "' must be a variable of kind " + std::string(to_string(want)));
            } else {
                checkExpr(a, loc);
            }
        }
    }
};

} // namespace

std::vector<StaticError> validate(const Program& program) { return Checker(program).run(); }

} // namespace rsm
