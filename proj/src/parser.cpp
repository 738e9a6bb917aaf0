#include <cctype>
#include <charconv>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "rsm/syntax.hpp"

namespace rsm {

ParseError::ParseError(SourceLoc loc, const std::string& message)
    : std::runtime_error(to_string(loc) + ": " + message), loc_(loc) {}

namespace {

enum class Tok {
    Ident,
    Number,
    Keyword,
    Punct,
    End,
};

struct Token {
    Tok kind;
    std::string text;
    SourceLoc loc;
};

const std::unordered_set<std::string_view> kKeywords = {
    "procedure", "int",   "stack", "if",   "then", "else", "fi",     "from",
    "loop",      "until", "iterate", "to", "downto", "end", "local", "delocal",
    "call",      "uncall", "push",  "pop",  "top",  "mod",
};

// Longest match first.
constexpr std::string_view kPuncts[] = {
    "+=", "-=", "*=", "!=", "(", ")", "[", "]", ",", "=", "<", "+", "-", "*", "^",
};

std::vector<Token> lex(std::string_view src) {
    std::vector<Token> out;
    int line = 1;
    int col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t k = 0; k < n; ++k, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (src.substr(i, 2) == "//") {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        SourceLoc loc{line, col};
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                ++j;
            std::string word(src.substr(i, j - i));
            Tok kind = kKeywords.count(word) ? Tok::Keyword : Tok::Ident;
            out.push_back({kind, std::move(word), loc});
            advance(j - i);
            continue;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
            if (j < src.size() &&
                (std::isalpha(static_cast<unsigned char>(src[j])) || src[j] == '_'))
                throw ParseError(loc, "malformed number");
            out.push_back({Tok::Number, std::string(src.substr(i, j - i)), loc});
            advance(j - i);
            continue;
        }
        bool matched = false;
        for (auto p : kPuncts) {
            if (src.substr(i, p.size()) == p) {
                out.push_back({Tok::Punct, std::string(p), loc});
                advance(p.size());
                matched = true;
                break;
            }
        }
        if (!matched) throw ParseError(loc, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::End, "", {line, col}});
    return out;
}

std::string describe(const Token& t) {
    switch (t.kind) {
    case Tok::End: return "end of input";
    case Tok::Ident: return "identifier '" + t.text + "'";
    case Tok::Number: return "number " + t.text;
    default: return "'" + t.text + "'";
    }
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Program program() {
        Program prog;
        if (peek().kind == Tok::End) fail("expected 'procedure'");
        while (peek().kind != Tok::End) prog.procedures.push_back(procedure());
        return prog;
    }

private:
    std::vector<Token> toks_;
    std::size_t pos_ = 0;

    const Token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    const Token& next() {
        const Token& t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    bool is(std::string_view text) const {
        const Token& t = peek();
        return (t.kind == Tok::Keyword || t.kind == Tok::Punct) && t.text == text;
    }
    bool accept(std::string_view text) {
        if (!is(text)) return false;
        next();
        return true;
    }
    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError(peek().loc, what + ", found " + describe(peek()));
    }
    const Token& expect(std::string_view text) {
        if (!is(text)) fail("expected '" + std::string(text) + "'");
        return next();
    }
    std::string ident() {
        if (peek().kind != Tok::Ident) fail("expected identifier");
        return next().text;
    }

    Procedure procedure() {
        Procedure proc;
        proc.loc = expect("procedure").loc;
        proc.name = ident();
        expect("(");
        if (!is(")")) {
            std::optional<ParamKind> base;
            do {
                Param p;
                if (accept("int")) {
                    base = ParamKind::Int;
                } else if (accept("stack")) {
                    base = ParamKind::Stack;
                } else if (!base) {
                    fail("expected 'int' or 'stack'");
                }
                p.name = ident();
                p.kind = *base == ParamKind::Stack ? ParamKind::Stack : ParamKind::Int;
                if (*base != ParamKind::Stack && accept("[")) {
                    expect("]");
                    p.kind = ParamKind::IntArray;
                }
                proc.params.push_back(std::move(p));
            } while (accept(","));
        }
        expect(")");
        proc.body = block();
        return proc;
    }

    bool atBlockEnd() const {
        if (peek().kind == Tok::End) return true;
        for (auto kw : {"else", "fi", "until", "end", "delocal", "procedure"})
            if (is(kw)) return true;
        return false;
    }

    Block block() {
        Block b;
        while (!atBlockEnd()) b.push_back(statement());
        return b;
    }

    Stmt statement() {
        SourceLoc loc = peek().loc;
        if (accept("if")) {
            IfFi s{expr(), {}, {}, lit(0)};
            expect("then");
            s.thenBody = block();
            if (accept("else")) s.elseBody = block();
            expect("fi");
            s.assertion = expr();
            return {std::move(s), loc};
        }
        if (accept("from")) {
            FromUntil s{expr(), {}, lit(0)};
            expect("loop");
            s.body = block();
            expect("until");
            s.exit = expr();
            return {std::move(s), loc};
        }
        if (accept("iterate")) {
            expect("int");
            Iterate s{ident(), lit(0), lit(0), false, {}};
            expect("=");
            s.from = expr();
            if (accept("downto")) {
                s.descending = true;
            } else {
                expect("to");
            }
            s.to = expr();
            s.body = block();
            expect("end");
            return {std::move(s), loc};
        }
        if (accept("local")) {
            expect("int");
            LocalBlock s{ident(), lit(0), {}, lit(0)};
            expect("=");
            s.init = expr();
            s.body = block();
            expect("delocal");
            expect("int");
            SourceLoc nameLoc = peek().loc;
            if (ident() != s.name)
                throw ParseError(nameLoc, "delocal name does not match local '" + s.name + "'");
            expect("=");
            s.final = expr();
            return {std::move(s), loc};
        }
        if (is("call") || is("uncall")) {
            Call s;
            s.uncall = next().text == "uncall";
            s.target = ident();
            expect("(");
            if (!is(")")) {
                do {
                    s.args.push_back(expr());
                } while (accept(","));
            }
            expect(")");
            return {std::move(s), loc};
        }
        if (is("push") || is("pop")) {
            StackOp s;
            s.pop = next().text == "pop";
            expect("(");
            s.target = lvalue();
            expect(",");
            s.stack = ident();
            expect(")");
            return {std::move(s), loc};
        }
        if (peek().kind == Tok::Ident) return update(loc);
        fail("expected statement");
    }

    LValue lvalue() {
        LValue lv{ident(), std::nullopt};
        if (accept("[")) {
            lv.index = expr();
            expect("]");
        }
        return lv;
    }

    Stmt update(SourceLoc loc) {
        LValue target = lvalue();
        UpdateOp op;
        if (accept("+=")) {
            op = UpdateOp::Add;
        } else if (accept("-=")) {
            op = UpdateOp::Sub;
        } else if (accept("*=")) {
            op = UpdateOp::Mul;
        } else {
            fail("expected '+=', '-=' or '*='");
        }
        Update u{std::move(target), op, lit(0), std::nullopt};
        if (op == UpdateOp::Mul && peek().kind == Tok::Ident && peek().text == "inv" &&
            peek(1).kind == Tok::Punct && peek(1).text == "(") {
            next();
            next();
            u.op = UpdateOp::MulInv;
            u.rhs = expr();
            expect(")");
            if (!is("mod")) fail("expected 'mod' after inv(...)");
        } else {
            u.rhs = expr();
        }
        if (accept("mod")) u.modulus = ident();
        return {std::move(u), loc};
    }

    // Precedence climbing over the binary levels.
    static int precedence(std::string_view op) {
        if (op == "=" || op == "!=" || op == "<") return 1;
        if (op == "+" || op == "-") return 2;
        if (op == "*") return 3;
        return 0;
    }

    static BinOp binop(std::string_view op) {
        if (op == "+") return BinOp::Add;
        if (op == "-") return BinOp::Sub;
        if (op == "*") return BinOp::Mul;
        if (op == "=") return BinOp::Eq;
        if (op == "!=") return BinOp::Ne;
        return BinOp::Lt;
    }

    Expr expr(int minPrec = 1) {
        Expr lhs = powerExpr();
        while (peek().kind == Tok::Punct) {
            int prec = precedence(peek().text);
            if (prec < minPrec || prec == 0) break;
            BinOp op = binop(next().text);
            Expr rhs = expr(prec + 1);
            lhs = binary(op, std::move(lhs), std::move(rhs));
        }
        return lhs;
    }

    Expr powerExpr() {
        Expr base = unary();
        if (accept("^")) return power(std::move(base), powerExpr());
        return base;
    }

    Expr unary() {
        if (accept("-")) {
            if (peek().kind == Tok::Number) return lit(number(true));
            return binary(BinOp::Sub, lit(0), unary());
        }
        return primary();
    }

    Int number(bool negative) {
        const Token& t = next();
        std::uint64_t magnitude = 0;
        auto [ptr, ec] =
            std::from_chars(t.text.data(), t.text.data() + t.text.size(), magnitude);
        const std::uint64_t limit =
            static_cast<std::uint64_t>(std::numeric_limits<Int>::max()) + (negative ? 1 : 0);
        if (ec != std::errc{} || magnitude > limit)
            throw ParseError(t.loc, "integer literal out of range");
        if (negative) return static_cast<Int>(0 - magnitude);
        return static_cast<Int>(magnitude);
    }

    Expr primary() {
        if (peek().kind == Tok::Number) return lit(number(false));
        if (accept("(")) {
            Expr e = expr();
            expect(")");
            return e;
        }
        if (accept("top")) {
            expect("(");
            std::string name = ident();
            expect(")");
            return top(std::move(name));
        }
        if (peek().kind == Tok::Ident) {
            std::string name = next().text;
            if (accept("[")) {
                Expr i = expr();
                expect("]");
                return at(std::move(name), std::move(i));
            }
            return var(std::move(name));
        }
        fail("expected expression");
    }
};

} // namespace

Program parseSyntax(std::string_view source) { return Parser(lex(source)).program(); }

Program parse(std::string_view source) {
    Program prog = parseSyntax(source);
    auto errors = validate(prog);
    if (!errors.empty()) throw StaticCheckFailed(std::move(errors));
    return prog;
}

} // namespace rsm
