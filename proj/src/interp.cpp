#include "rsm/interp.hpp"

#include <utility>
#include <vector>

#include "rsm/modarith.hpp"

namespace rsm {

std::string_view to_string(RuntimeErrorKind kind) {
    switch (kind) {
    case RuntimeErrorKind::FiAssertionFailed: return "FiAssertionFailed";
    case RuntimeErrorKind::FromAssertionFailed: return "FromAssertionFailed";
    case RuntimeErrorKind::DelocalMismatch: return "DelocalMismatch";
    case RuntimeErrorKind::PopNonZeroTarget: return "PopNonZeroTarget";
    case RuntimeErrorKind::IndexOutOfBounds: return "IndexOutOfBounds";
    case RuntimeErrorKind::UnboundName: return "UnboundName";
    case RuntimeErrorKind::NonCoprimeModulus: return "NonCoprimeModulus";
    case RuntimeErrorKind::OperandOutOfRange: return "OperandOutOfRange";
    case RuntimeErrorKind::WordOverflow: return "WordOverflow";
    case RuntimeErrorKind::StackUnderflow: return "StackUnderflow";
    case RuntimeErrorKind::IterateAssertionFailed: return "IterateAssertionFailed";
    case RuntimeErrorKind::ArgumentChanged: return "ArgumentChanged";
    case RuntimeErrorKind::TypeMismatch: return "TypeMismatch";
    case RuntimeErrorKind::CallDepthExceeded: return "CallDepthExceeded";
    }
    return "?";
}

RuntimeError::RuntimeError(RuntimeErrorKind kind, SourceLoc loc, const std::string& message)
    : std::runtime_error(to_string(loc) + ": " + std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      loc_(loc) {}

namespace {

constexpr int kMaxCallDepth = 1000;

RuntimeErrorKind fromArith(ArithErrorKind kind) {
    switch (kind) {
    case ArithErrorKind::OperandOutOfRange: return RuntimeErrorKind::OperandOutOfRange;
    case ArithErrorKind::NonCoprimeModulus: return RuntimeErrorKind::NonCoprimeModulus;
    case ArithErrorKind::WordOverflow: return RuntimeErrorKind::WordOverflow;
    }
    return RuntimeErrorKind::OperandOutOfRange;
}

UpdateOp inverse(UpdateOp op) {
    switch (op) {
    case UpdateOp::Add: return UpdateOp::Sub;
    case UpdateOp::Sub: return UpdateOp::Add;
    case UpdateOp::Mul: return UpdateOp::MulInv;
    case UpdateOp::MulInv: return UpdateOp::Mul;
    }
    return op;
}

struct Binding {
    std::string_view name;
    std::size_t cell;
};

// Innermost binding last. Frames hold indices, never references, because
// cells_ grows and shrinks as locals come and go.
using Frame = std::vector<Binding>;

class Machine {
public:
    explicit Machine(const Program* program) : program_(program) {}

    std::vector<Value> cells;
    RunStats stats;

    RunStats finalStats() const {
        RunStats s = stats;
        s.kernelOps = kernel_.ops;
        return s;
    }

    Frame bindStore(const Store& store) {
        Frame frame;
        for (const auto& [name, value] : store) {
            frame.push_back({name, cells.size()});
            cells.push_back(value);
        }
        return frame;
    }

    void writeBack(Store& store) {
        std::size_t k = 0;
        for (auto& entry : store) entry.second = std::move(cells[k++]);
    }

    Int eval(const Expr& e, const Frame& f, SourceLoc loc) {
        return std::visit(
            [&](const auto& n) -> Int {
                using T = std::decay_t<decltype(n)>;
                if constexpr (std::is_same_v<T, IntLiteral>) {
                    return n.value;
                } else if constexpr (std::is_same_v<T, VarRef>) {
                    return asInt(lookup(f, n.name, loc), n.name, loc);
                } else if constexpr (std::is_same_v<T, IndexRef>) {
                    Int i = eval(*n.index, f, loc);
                    return element(lookup(f, n.array, loc), n.array, i, loc);
                } else if constexpr (std::is_same_v<T, TopRef>) {
                    const IntStack& s = asStack(lookup(f, n.stack, loc), n.stack, loc);
                    return s.items.empty() ? Int{-1} : s.items.back();
                } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                    Int a = eval(*n.lhs, f, loc);
                    Int b = eval(*n.rhs, f, loc);
                    return apply(n.op, a, b, loc);
                } else {
                    throw RuntimeError(RuntimeErrorKind::TypeMismatch, loc,
                                       "'^' outside a modular update");
                }
            },
            e.node);
    }

    void execBlock(const Block& block, Frame& f, Direction dir) {
        if (dir == Direction::Forward) {
            for (const auto& s : block) exec(s, f, dir);
        } else {
            for (auto it = block.rbegin(); it != block.rend(); ++it) exec(*it, f, dir);
        }
    }

    void exec(const Stmt& s, Frame& f, Direction dir) {
        std::visit([&](const auto& n) { execNode(n, s.loc, f, dir); }, s.node);
    }

private:
    const Program* program_;
    OpCounter kernel_;
    int depth_ = 0;

    std::size_t lookup(const Frame& f, std::string_view name, SourceLoc loc) const {
        for (auto it = f.rbegin(); it != f.rend(); ++it)
            if (it->name == name) return it->cell;
        throw RuntimeError(RuntimeErrorKind::UnboundName, loc,
                           "'" + std::string(name) + "' is not bound");
    }

    [[noreturn]] static void kindError(std::string_view name, ParamKind want, SourceLoc loc) {
        throw RuntimeError(RuntimeErrorKind::TypeMismatch, loc,
                           "'" + std::string(name) + "' is not " + std::string(to_string(want)));
    }

    Int& asInt(std::size_t cell, std::string_view name, SourceLoc loc) {
        if (auto* v = std::get_if<Int>(&cells[cell])) return *v;
        kindError(name, ParamKind::Int, loc);
    }

    IntArray& asArray(std::size_t cell, std::string_view name, SourceLoc loc) {
        if (auto* v = std::get_if<IntArray>(&cells[cell])) return *v;
        kindError(name, ParamKind::IntArray, loc);
    }

    IntStack& asStack(std::size_t cell, std::string_view name, SourceLoc loc) {
        if (auto* v = std::get_if<IntStack>(&cells[cell])) return *v;
        kindError(name, ParamKind::Stack, loc);
    }

    Int& element(std::size_t cell, std::string_view name, Int i, SourceLoc loc) {
        IntArray& a = asArray(cell, name, loc);
        if (i < 0 || static_cast<std::uint64_t>(i) >= a.elems.size())
            throw RuntimeError(RuntimeErrorKind::IndexOutOfBounds, loc,
                               std::string(name) + "[" + std::to_string(i) + "] outside length " +
                                   std::to_string(a.elems.size()));
        return a.elems[static_cast<std::size_t>(i)];
    }

    Int& resolve(const LValue& lv, const Frame& f, SourceLoc loc) {
        if (!lv.index) return asInt(lookup(f, lv.name, loc), lv.name, loc);
        Int i = eval(**lv.index, f, loc);
        return element(lookup(f, lv.name, loc), lv.name, i, loc);
    }

    static Int apply(BinOp op, Int a, Int b, SourceLoc loc) {
        Int r = 0;
        bool overflow = false;
        switch (op) {
        case BinOp::Add: overflow = __builtin_add_overflow(a, b, &r); break;
        case BinOp::Sub: overflow = __builtin_sub_overflow(a, b, &r); break;
        case BinOp::Mul: overflow = __builtin_mul_overflow(a, b, &r); break;
        case BinOp::Eq: return a == b;
        case BinOp::Ne: return a != b;
        case BinOp::Lt: return a < b;
        }
        if (overflow)
            throw RuntimeError(RuntimeErrorKind::WordOverflow, loc,
                               std::to_string(a) + " and " + std::to_string(b) +
                                   " overflow a 64-bit word");
        return r;
    }

    // Right-hand side of a `mod q` update: + - * and ^ are modular, anything
    // else is evaluated plainly and must already be a residue. Exponents are
    // plain integers.
    Int evalMod(const Expr& e, const Frame& f, Modulus q, SourceLoc loc) {
        if (const auto* b = std::get_if<BinaryExpr>(&e.node)) {
            switch (b->op) {
            case BinOp::Add:
                return modadd(evalMod(*b->lhs, f, q, loc), evalMod(*b->rhs, f, q, loc), q, &kernel_);
            case BinOp::Sub:
                return modsub(evalMod(*b->lhs, f, q, loc), evalMod(*b->rhs, f, q, loc), q, &kernel_);
            case BinOp::Mul:
                return modmul(evalMod(*b->lhs, f, q, loc), evalMod(*b->rhs, f, q, loc), q, &kernel_);
            default: break;
            }
        }
        if (const auto* p = std::get_if<PowExpr>(&e.node)) {
            Int base = evalMod(*p->base, f, q, loc);
            return modpow(base, eval(*p->exponent, f, loc), q, &kernel_);
        }
        Int v = eval(e, f, loc);
        requireOperand(v, q, loc);
        return v;
    }

    static void requireOperand(Int v, Modulus q, SourceLoc loc) {
        if (!q.contains(v))
            throw RuntimeError(RuntimeErrorKind::OperandOutOfRange, loc,
                               "operand " + std::to_string(v) + " not in [0, " +
                                   std::to_string(q.value()) + ")");
    }

    void execNode(const Update& u, SourceLoc loc, Frame& f, Direction dir) {
        const UpdateOp op = dir == Direction::Forward ? u.op : inverse(u.op);
        ++stats.updates;
        if (!u.modulus) {
            Int rhs = eval(u.rhs, f, loc);
            Int& x = resolve(u.target, f, loc);
            switch (op) {
            case UpdateOp::Add: x = apply(BinOp::Add, x, rhs, loc); return;
            case UpdateOp::Sub: x = apply(BinOp::Sub, x, rhs, loc); return;
            default:
                throw RuntimeError(RuntimeErrorKind::TypeMismatch, loc, "'*=' without modulus");
            }
        }
        try {
            const Modulus q(asInt(lookup(f, *u.modulus, loc), *u.modulus, loc));
            Int rhs = evalMod(u.rhs, f, q, loc);
            Int& x = resolve(u.target, f, loc);
            switch (op) {
            case UpdateOp::Add: x = modadd(x, rhs, q, &kernel_); break;
            case UpdateOp::Sub: x = modsub(x, rhs, q, &kernel_); break;
            case UpdateOp::Mul:
                requireOperand(x, q, loc);
                requireCoprime(rhs, q);
                x = modmul(x, rhs, q, &kernel_);
                break;
            case UpdateOp::MulInv:
                requireOperand(x, q, loc);
                // Inverse and multiply count as one kernel operation, the
                // same as the forward multiply they undo.
                x = modmul(x, modinv(rhs, q), q, &kernel_);
                break;
            }
        } catch (const ArithError& e) {
            throw RuntimeError(fromArith(e.kind()), loc, e.what());
        }
    }

    void execNode(const IfFi& s, SourceLoc loc, Frame& f, Direction dir) {
        const bool fwd = dir == Direction::Forward;
        ++stats.comparisons;
        const bool branch = eval(fwd ? s.test : s.assertion, f, loc) != 0;
        execBlock(branch ? s.thenBody : s.elseBody, f, dir);
        ++stats.comparisons;
        const bool check = eval(fwd ? s.assertion : s.test, f, loc) != 0;
        if (check != branch)
            throw RuntimeError(RuntimeErrorKind::FiAssertionFailed, loc,
                               std::string(fwd ? "fi assertion" : "if test") + " is " +
                                   (check ? "true" : "false") + " after the " +
                                   (branch ? "then" : "else") + " branch");
    }

    void execNode(const FromUntil& s, SourceLoc loc, Frame& f, Direction dir) {
        const bool fwd = dir == Direction::Forward;
        const Expr& entry = fwd ? s.entry : s.exit;
        const Expr& exit = fwd ? s.exit : s.entry;
        auto test = [&](const Expr& e) {
            ++stats.comparisons;
            return eval(e, f, loc) != 0;
        };
        if (!test(entry))
            throw RuntimeError(RuntimeErrorKind::FromAssertionFailed, loc,
                               "loop entry assertion is false on entry");
        while (!test(exit)) {
            execBlock(s.body, f, dir);
            if (test(entry))
                throw RuntimeError(RuntimeErrorKind::FromAssertionFailed, loc,
                                   "loop entry assertion is true after an iteration");
        }
    }

    void execNode(const Iterate& s, SourceLoc loc, Frame& f, Direction dir) {
        const bool fwd = dir == Direction::Forward;
        // The bound the run starts from is evaluated first in either direction.
        const Expr& startExpr = fwd ? s.from : s.to;
        const Expr& stopExpr = fwd ? s.to : s.from;
        const Int start = eval(startExpr, f, loc);
        const Int stop = eval(stopExpr, f, loc);
        const bool descending = fwd ? s.descending : !s.descending;
        const bool empty = descending ? start < stop : start > stop;

        const std::size_t cell = cells.size();
        cells.push_back(Int{start});
        f.push_back({s.counter, cell});
        if (!empty) {
            for (Int v = start;; v += descending ? -1 : 1) {
                cells[cell] = v;
                execBlock(s.body, f, dir);
                if (std::get<Int>(cells[cell]) != v)
                    throw RuntimeError(RuntimeErrorKind::IterateAssertionFailed, loc,
                                       "body changed counter '" + s.counter + "'");
                if (v == stop) break;
            }
        }
        f.pop_back();
        cells.pop_back();

        if (eval(startExpr, f, loc) != start || eval(stopExpr, f, loc) != stop)
            throw RuntimeError(RuntimeErrorKind::IterateAssertionFailed, loc,
                               "body changed the bounds of iterate '" + s.counter + "'");
    }

    void execNode(const LocalBlock& s, SourceLoc loc, Frame& f, Direction dir) {
        const bool fwd = dir == Direction::Forward;
        const Int initial = eval(fwd ? s.init : s.final, f, loc);
        const std::size_t cell = cells.size();
        cells.push_back(initial);
        f.push_back({s.name, cell});
        execBlock(s.body, f, dir);
        ++stats.comparisons;
        const Int expected = eval(fwd ? s.final : s.init, f, loc);
        const Int actual = std::get<Int>(cells[cell]);
        if (actual != expected)
            throw RuntimeError(RuntimeErrorKind::DelocalMismatch, loc,
                               "'" + s.name + "' is " + std::to_string(actual) + ", expected " +
                                   std::to_string(expected));
        f.pop_back();
        cells.pop_back();
    }

    void execNode(const Call& c, SourceLoc loc, Frame& f, Direction dir) {
        const Procedure* callee = program_->find(c.target);
        if (!callee)
            throw RuntimeError(RuntimeErrorKind::UnboundName, loc,
                               "no procedure '" + c.target + "'");
        if (callee->params.size() != c.args.size())
            throw RuntimeError(RuntimeErrorKind::TypeMismatch, loc,
                               "wrong number of arguments to '" + c.target + "'");
        if (depth_ >= kMaxCallDepth)
            throw RuntimeError(RuntimeErrorKind::CallDepthExceeded, loc,
                               "call depth exceeds " + std::to_string(kMaxCallDepth));

        struct Temp {
            std::size_t arg;
            std::size_t cell;
            Int value;
        };
        std::vector<Temp> temps;
        const std::size_t base = cells.size();
        Frame inner;
        inner.reserve(c.args.size());
        for (std::size_t k = 0; k < c.args.size(); ++k) {
            const Param& p = callee->params[k];
            if (const auto* v = std::get_if<VarRef>(&c.args[k].node)) {
                std::size_t cell = lookup(f, v->name, loc);
                if (kindOf(cells[cell]) != p.kind) kindError(v->name, p.kind, loc);
                inner.push_back({p.name, cell});
            } else {
                Int value = eval(c.args[k], f, loc);
                temps.push_back({k, cells.size(), value});
                inner.push_back({p.name, cells.size()});
                cells.push_back(value);
            }
        }

        ++stats.calls;
        ++depth_;
        execBlock(callee->body, inner, c.uncall ? reverse(dir) : dir);
        --depth_;

        for (const Temp& t : temps) {
            if (std::get<Int>(cells[t.cell]) != t.value || eval(c.args[t.arg], f, loc) != t.value)
                throw RuntimeError(RuntimeErrorKind::ArgumentChanged, loc,
                                   "argument " + std::to_string(t.arg + 1) + " of '" + c.target +
                                       "' changed during the call");
        }
        cells.resize(base);
    }

    void execNode(const StackOp& s, SourceLoc loc, Frame& f, Direction dir) {
        const bool pop = dir == Direction::Forward ? s.pop : !s.pop;
        ++stats.stackOps;
        Int& x = resolve(s.target, f, loc);
        IntStack& st = asStack(lookup(f, s.stack, loc), s.stack, loc);
        if (!pop) {
            st.items.push_back(x);
            x = 0;
            return;
        }
        if (st.items.empty())
            throw RuntimeError(RuntimeErrorKind::StackUnderflow, loc,
                               "pop from empty stack '" + s.stack + "'");
        if (x != 0)
            throw RuntimeError(RuntimeErrorKind::PopNonZeroTarget, loc,
                               "pop target holds " + std::to_string(x) + ", not 0");
        x = st.items.back();
        st.items.pop_back();
    }
};

} // namespace

RunResult run(const Program& program, std::string_view entry, Store store, Direction dir) {
    const Procedure* proc = program.find(entry);
    if (!proc)
        throw RuntimeError(RuntimeErrorKind::UnboundName, {},
                           "no procedure '" + std::string(entry) + "'");
    Machine m(&program);
    m.bindStore(store);
    Frame frame;
    for (const Param& p : proc->params) {
        auto it = store.find(p.name);
        if (it == store.end())
            throw RuntimeError(RuntimeErrorKind::UnboundName, proc->loc,
                               "state does not bind parameter '" + p.name + "' of '" +
                                   proc->name + "'");
        if (kindOf(it->second) != p.kind)
            throw RuntimeError(RuntimeErrorKind::TypeMismatch, proc->loc,
                               "parameter '" + p.name + "' expects " +
                                   std::string(to_string(p.kind)));
        frame.push_back({p.name, static_cast<std::size_t>(std::distance(store.begin(), it))});
    }
    m.execBlock(proc->body, frame, dir);
    m.writeBack(store);
    return {std::move(store), m.finalStats()};
}

Int evalExpr(const Expr& expr, const Store& store) {
    Machine m(nullptr);
    Frame f = m.bindStore(store);
    return m.eval(expr, f, {});
}

Store execStmt(const Program& program, const Stmt& stmt, Store store, Direction dir,
               RunStats* stats) {
    Machine m(&program);
    Frame f = m.bindStore(store);
    m.exec(stmt, f, dir);
    m.writeBack(store);
    if (stats) *stats = m.finalStats();
    return store;
}

} // namespace rsm
