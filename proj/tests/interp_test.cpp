#include <doctest.h>

#include "rsm/corpus.hpp"
#include "rsm/interp.hpp"
#include "rsm/syntax.hpp"
#include "support/generators.hpp"

using namespace rsm;

namespace {

Store fwd(std::string_view src, std::string_view entry, Store s) {
    return run(parse(src), entry, std::move(s), Direction::Forward).store;
}

Store bwd(std::string_view src, std::string_view entry, Store s) {
    return run(parse(src), entry, std::move(s), Direction::Backward).store;
}

RuntimeErrorKind failure(std::string_view src, std::string_view entry, Store s,
                         Direction dir = Direction::Forward) {
    try {
        run(parse(src), entry, std::move(s), dir);
    } catch (const RuntimeError& e) {
        return e.kind();
    }
    FAIL("expected a runtime error");
    return RuntimeErrorKind::UnboundName;
}

Stmt stmtOf(std::string_view body, std::string_view params) {
    Program p = parse("procedure p(" + std::string(params) + ")\n" + std::string(body));
    return p.procedures[0].body.at(0);
}

} // namespace

TEST_CASE("addition and its inverse") {
    const char* src = "procedure p(int x) x += 2";
    CHECK(fwd(src, "p", {{"x", Int{3}}}) == Store{{"x", Int{5}}});
    CHECK(bwd(src, "p", {{"x", Int{5}}}) == Store{{"x", Int{3}}});
}

TEST_CASE("naive corpus program on the two-match example") {
    Store s{{"T", IntArray{{0, 1, 2, 0, 1, 4}}},
            {"P", IntArray{{0, 1, 3}}},
            {"m", Int{2}},
            {"n", Int{5}},
            {"R", IntStack{}}};
    Store out = run(corpusAst(CorpusName::Naive), "naivesearch", s, Direction::Forward).store;
    CHECK(std::get<IntStack>(out.at("R")).items == std::vector<Int>{0, 3});
    CHECK(out.at("T") == s.at("T"));
    CHECK(out.at("P") == s.at("P"));
    CHECK(formatStore(out).find("R : stack = 3 0") != std::string::npos);

    // With T[n] == P[m] the compare loop at the last shift runs past the text.
    Store clash = s;
    clash["T"] = IntArray{{0, 1, 2, 0, 1, 3}};
    try {
        run(corpusAst(CorpusName::Naive), "naivesearch", clash, Direction::Forward);
        FAIL("expected the compare loop to leave the text");
    } catch (const RuntimeError& e) {
        CHECK(e.kind() == RuntimeErrorKind::IndexOutOfBounds);
    }
}

TEST_CASE("expression evaluation") {
    Store s{{"R", IntStack{{2, 4}}}, {"E", IntStack{}}, {"T", IntArray{{5, 6, 7}}}, {"x", Int{3}}};
    CHECK(evalExpr(top("R"), s) == 4);
    CHECK(evalExpr(top("E"), s) == -1);
    CHECK(evalExpr(at("T", binary(BinOp::Add, lit(1), lit(1))), s) == 7);
    CHECK(evalExpr(binary(BinOp::Lt, var("x"), lit(4)), s) == 1);
    CHECK(evalExpr(binary(BinOp::Ne, var("x"), lit(3)), s) == 0);
    CHECK(evalExpr(binary(BinOp::Eq, var("x"), lit(3)), s) == 1);

    auto kindOfFailure = [&](const Expr& e) {
        try {
            evalExpr(e, s);
        } catch (const RuntimeError& err) {
            return err.kind();
        }
        return RuntimeErrorKind::TypeMismatch;
    };
    CHECK(kindOfFailure(at("T", lit(3))) == RuntimeErrorKind::IndexOutOfBounds);
    CHECK(kindOfFailure(at("T", lit(-1))) == RuntimeErrorKind::IndexOutOfBounds);
    CHECK(kindOfFailure(var("nope")) == RuntimeErrorKind::UnboundName);
    CHECK(kindOfFailure(binary(BinOp::Mul, lit(INT64_MAX), lit(2))) ==
          RuntimeErrorKind::WordOverflow);
}

TEST_CASE("push and pop") {
    Program prog = parse("procedure p(int s, stack R) push(s, R)");
    Stmt push = prog.procedures[0].body[0];
    Stmt pop = stmtOf("pop(s, R)", "int s, stack R");

    Store before{{"s", Int{4}}, {"R", IntStack{{2}}}};
    Store after{{"s", Int{0}}, {"R", IntStack{{2, 4}}}};
    CHECK(execStmt(prog, push, before, Direction::Forward) == after);
    CHECK(execStmt(prog, pop, after, Direction::Forward) == before);
    CHECK(execStmt(prog, push, after, Direction::Backward) == before);
    CHECK(execStmt(prog, pop, before, Direction::Backward) == after);

    try {
        execStmt(prog, pop, Store{{"s", Int{1}}, {"R", IntStack{{2}}}}, Direction::Forward);
        FAIL("pop into a non-zero target must fail");
    } catch (const RuntimeError& e) {
        CHECK(e.kind() == RuntimeErrorKind::PopNonZeroTarget);
    }
    try {
        execStmt(prog, pop, Store{{"s", Int{0}}, {"R", IntStack{}}}, Direction::Forward);
        FAIL("pop from an empty stack must fail");
    } catch (const RuntimeError& e) {
        CHECK(e.kind() == RuntimeErrorKind::StackUnderflow);
    }
}

TEST_CASE("if-fi takes the then branch and checks the assertion") {
    Program prog = parse(
        "procedure p(int i, m, s, stack R)\n"
        "  if i = m then i -= m else i += 1 fi s = top(R)");
    Store in{{"i", Int{2}}, {"m", Int{2}}, {"s", Int{7}}, {"R", IntStack{{1, 7}}}};
    Store out = run(prog, "p", in, Direction::Forward).store;
    CHECK(std::get<Int>(out.at("i")) == 0);
    CHECK(run(prog, "p", out, Direction::Backward).store == in);

    Store bad = in;
    bad["R"] = IntStack{{1, 8}};
    CHECK(failure("procedure p(int i, m, s, stack R)\n"
                  "  if i = m then i -= m else i += 1 fi s = top(R)",
                  "p", bad) == RuntimeErrorKind::FiAssertionFailed);
}

TEST_CASE("from-until loop tests the exit before each pass") {
    const char* src = "procedure p(int i, n) from i = 0 loop i += 1 until i = n";
    CHECK(fwd(src, "p", {{"i", Int{0}}, {"n", Int{0}}}).at("i") == Value{Int{0}});
    CHECK(fwd(src, "p", {{"i", Int{0}}, {"n", Int{5}}}).at("i") == Value{Int{5}});
    CHECK(bwd(src, "p", {{"i", Int{5}}, {"n", Int{5}}}).at("i") == Value{Int{0}});
    CHECK(failure(src, "p", {{"i", Int{1}}, {"n", Int{5}}}) ==
          RuntimeErrorKind::FromAssertionFailed);
    // The body leaves the entry assertion true.
    CHECK(failure("procedure p(int i, j) from i = 0 loop j += 1 until j = 3",
                  "p", {{"i", Int{0}}, {"j", Int{0}}}) == RuntimeErrorKind::FromAssertionFailed);
}

TEST_CASE("iterate") {
    const char* src =
        "procedure p(int x, a, b, int A[])\n"
        "  iterate int k = a to b\n"
        "    x += k * A[k]\n"
        "  end";
    Store in{{"x", Int{0}}, {"a", Int{1}}, {"b", Int{3}}, {"A", IntArray{{10, 20, 30, 40}}}};
    Store out = fwd(src, "p", in);
    CHECK(std::get<Int>(out.at("x")) == 20 + 60 + 120);
    CHECK(bwd(src, "p", out) == in);

    Store empty = in;
    empty["a"] = Int{4};
    CHECK(fwd(src, "p", empty) == empty);

    const char* down = "procedure p(int x) iterate int k = 3 downto 1 push(x, R) end";
    CHECK_THROWS(parse(down));  // R is not declared
    const char* order =
        "procedure p(int x, stack R)\n"
        "  iterate int k = 3 downto 1\n"
        "    x += k\n"
        "    push(x, R)\n"
        "  end";
    Store pushed = fwd(order, "p", {{"x", Int{0}}, {"R", IntStack{}}});
    CHECK(std::get<IntStack>(pushed.at("R")).items == std::vector<Int>{3, 2, 1});
}

TEST_CASE("iterate rejects bodies that move its bounds") {
    CHECK(failure("procedure p(int n, x) iterate int k = 0 to n n += 1 end", "p",
                  {{"n", Int{2}}, {"x", Int{0}}}) == RuntimeErrorKind::IterateAssertionFailed);
}

TEST_CASE("local-delocal") {
    const char* ok =
        "procedure p(int x)\n"
        "  local int t = x + 1\n"
        "    t += 2\n"
        "  delocal int t = x + 3";
    CHECK(fwd(ok, "p", {{"x", Int{1}}}) == Store{{"x", Int{1}}});
    CHECK(bwd(ok, "p", {{"x", Int{1}}}) == Store{{"x", Int{1}}});

    const char* bad = "procedure p(int x) local int t = 0 t += x delocal int t = 0";
    CHECK(failure(bad, "p", {{"x", Int{1}}}) == RuntimeErrorKind::DelocalMismatch);
    CHECK(failure(bad, "p", {{"x", Int{1}}}, Direction::Backward) ==
          RuntimeErrorKind::DelocalMismatch);
    CHECK(fwd(bad, "p", {{"x", Int{0}}}) == Store{{"x", Int{0}}});
}

TEST_CASE("modular updates") {
    const char* src = "procedure p(int x, y, q) x *= y mod q";
    CHECK(fwd(src, "p", {{"x", Int{7}}, {"y", Int{10}}, {"q", Int{13}}}).at("x") == Value{Int{5}});
    CHECK(bwd(src, "p", {{"x", Int{5}}, {"y", Int{10}}, {"q", Int{13}}}).at("x") == Value{Int{7}});
    CHECK(failure(src, "p", {{"x", Int{1}}, {"y", Int{2}}, {"q", Int{6}}}) ==
          RuntimeErrorKind::NonCoprimeModulus);
    CHECK(failure(src, "p", {{"x", Int{1}}, {"y", Int{2}}, {"q", Int{6}}}, Direction::Backward) ==
          RuntimeErrorKind::NonCoprimeModulus);
    CHECK(failure(src, "p", {{"x", Int{13}}, {"y", Int{2}}, {"q", Int{13}}}) ==
          RuntimeErrorKind::OperandOutOfRange);

    const char* add = "procedure p(int x, y, q) x += y mod q";
    CHECK(fwd(add, "p", {{"x", Int{5}}, {"y", Int{9}}, {"q", Int{13}}}).at("x") == Value{Int{1}});
    CHECK(failure(add, "p", {{"x", Int{5}}, {"y", Int{-1}}, {"q", Int{13}}}) ==
          RuntimeErrorKind::OperandOutOfRange);

    const char* pw = "procedure p(int h, d, m, q) h += d ^ (m - 1) mod q";
    CHECK(fwd(pw, "p", {{"h", Int{0}}, {"d", Int{10}}, {"m", Int{5}}, {"q", Int{13}}}).at("h") ==
          Value{Int{3}});

    const char* inv = "procedure p(int x, y, q) x *= inv(y) mod q";
    CHECK(fwd(inv, "p", {{"x", Int{5}}, {"y", Int{10}}, {"q", Int{13}}}).at("x") == Value{Int{7}});
}

TEST_CASE("plain arithmetic overflow is an error") {
    CHECK(failure("procedure p(int x, y) x += y", "p", {{"x", INT64_MAX}, {"y", Int{1}}}) ==
          RuntimeErrorKind::WordOverflow);
    CHECK(failure("procedure p(int x, y) x -= y", "p", {{"x", INT64_MIN}, {"y", Int{1}}}) ==
          RuntimeErrorKind::WordOverflow);
}

TEST_CASE("entry store must bind the parameters") {
    CHECK(failure("procedure p(int x, y) x += y", "p", {{"x", Int{1}}}) ==
          RuntimeErrorKind::UnboundName);
    CHECK(failure("procedure p(int x, y) x += y", "p", {{"x", Int{1}}, {"y", IntArray{}}}) ==
          RuntimeErrorKind::TypeMismatch);
    CHECK(failure("procedure p(int x) x += 1", "q", {{"x", Int{1}}}) ==
          RuntimeErrorKind::UnboundName);
}

TEST_CASE("errors name the failing statement") {
    try {
        run(parse("procedure p(int x)\n  x += 1\n  local int t = 0\n  delocal int t = 1"), "p",
            {{"x", Int{0}}}, Direction::Forward);
        FAIL("expected DelocalMismatch");
    } catch (const RuntimeError& e) {
        CHECK(e.kind() == RuntimeErrorKind::DelocalMismatch);
        CHECK(e.where().line == 3);
    }
}

TEST_CASE("extra bindings pass through untouched") {
    Store s{{"x", Int{1}}, {"other", IntArray{{1, 2}}}};
    Store out = fwd("procedure p(int x) x += 1", "p", s);
    CHECK(out.at("other") == s.at("other"));
}

TEST_CASE("by-value arguments must not change") {
    const char* src =
        "procedure p(int x) call q(x + 1)\n"
        "procedure q(int a) a += 1";
    CHECK(failure(src, "p", {{"x", Int{0}}}) == RuntimeErrorKind::ArgumentChanged);
    const char* ok =
        "procedure p(int x) call q(x, 2 * 3)\n"
        "procedure q(int a, b) a += b";
    CHECK(fwd(ok, "p", {{"x", Int{1}}}) == Store{{"x", Int{7}}});
}

TEST_CASE("runaway recursion stops") {
    CHECK(failure("procedure p(int x) call p(x)", "p", {{"x", Int{0}}}) ==
          RuntimeErrorKind::CallDepthExceeded);
}

TEST_CASE("uncall inside a forward run equals call inside a backward run") {
    const char* src =
        "procedure f(int a, b, int A[])\n"
        "  a += 2 * b\n"
        "  A[1] -= a\n"
        "  b += A[2]\n"
        "procedure viaUncall(int a, b, int A[]) uncall f(a, b, A)\n"
        "procedure viaCall(int a, b, int A[]) call f(a, b, A)";
    Program prog = parse(src);
    testing::Rng rng(7);
    for (int k = 0; k < 200; ++k) {
        Store s{{"a", testing::uniform(rng, -50, 50)},
                {"b", testing::uniform(rng, -50, 50)},
                {"A", IntArray{testing::randomSymbols(rng, 3, 100)}}};
        auto u = run(prog, "viaUncall", s, Direction::Forward);
        auto c = run(prog, "viaCall", s, Direction::Backward);
        REQUIRE(u.store == c.store);
        REQUIRE(u.stats == c.stats);
    }
}

TEST_CASE("forward then backward restores random straight-line stores") {
    testing::Rng rng(99);
    int succeeded = 0;
    for (int k = 0; k < 300; ++k) {
        auto c = testing::randomStraightLine(rng);
        REQUIRE(validate(c.program).empty());
        RunResult f;
        try {
            f = run(c.program, "main", c.store, Direction::Forward);
        } catch (const RuntimeError&) {
            continue;
        }
        auto b = run(c.program, "main", f.store, Direction::Backward);
        REQUIRE(b.store == c.store);
        REQUIRE(b.stats == f.stats);
        auto again = run(c.program, "main", c.store, Direction::Forward);
        REQUIRE(again.store == f.store);
        REQUIRE(again.stats == f.stats);
        ++succeeded;
    }
    CHECK(succeeded > 100);
}

TEST_CASE("corpus runs have symmetric cost") {
    testing::Rng rng(5);
    for (int k = 0; k < 50; ++k) {
        auto inst = testing::randomInstance(rng, 24, 5);
        MatchInput in = sentinelize(inst.text, inst.pattern, inst.alphabet);
        for (auto name : {CorpusName::Naive, CorpusName::RabinKarp}) {
            auto f = interpretSearch(name, in, inst.q);
            auto b = run(corpusAst(name), corpusEntry(name), f.final, Direction::Backward);
            REQUIRE(b.store == f.initial);
            REQUIRE(b.stats == f.stats);
        }
    }
}
