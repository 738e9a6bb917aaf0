#include <doctest.h>

#include <numeric>
#include <random>
#include <set>

#include "rsm/modarith.hpp"
#include "support/oracles.hpp"

using namespace rsm;

namespace {

ArithErrorKind failure(auto&& f) {
    try {
        f();
    } catch (const ArithError& e) {
        return e.kind();
    }
    FAIL("expected an arithmetic error");
    return ArithErrorKind::WordOverflow;
}

} // namespace

TEST_CASE("addition and subtraction") {
    const Modulus q13(13);
    CHECK(modadd(5, 9, q13) == 1);
    CHECK(modsub(1, 9, q13) == 5);
    CHECK(modsub(0, 1, q13) == 12);
    for (Int x = 0; x < 13; ++x) {
        CHECK(modadd(x, 0, q13) == x);
        CHECK(modadd(0, x, q13) == x);
        CHECK(modsub(x, x, q13) == 0);
    }
    CHECK(failure([&] { modadd(13, 0, q13); }) == ArithErrorKind::OperandOutOfRange);
    CHECK(failure([&] { modsub(0, -1, q13); }) == ArithErrorKind::OperandOutOfRange);
    CHECK(failure([] { Modulus(0); }) == ArithErrorKind::OperandOutOfRange);
}

TEST_CASE("addition cancels for every residue pair") {
    for (Int q : {1, 2, 5, 6, 13, 64}) {
        const Modulus m(q);
        for (Int x = 0; x < q; ++x)
            for (Int c = 0; c < q; ++c) {
                REQUIRE(modsub(modadd(x, c, m), c, m) == x);
                REQUIRE(modadd(modsub(x, c, m), c, m) == x);
            }
    }
}

TEST_CASE("multiplication") {
    const Modulus q13(13);
    CHECK(modmul(7, 10, q13) == 5);
    for (Int x = 0; x < 13; ++x) CHECK(modmul(x, 1, q13) == x);

    const Modulus q6(6);
    CHECK(modmul(1, 2, q6) == 2);
    CHECK(modmul(4, 2, q6) == 2);

    // Large moduli go through the wide intermediate.
    const Modulus big(INT64_MAX);
    CHECK(modmul(INT64_MAX - 1, INT64_MAX - 1, big) == 1);
}

TEST_CASE("multiplication is a bijection exactly for coprime multipliers") {
    for (Int q : {2, 5, 6, 7, 12, 13, 31, 101}) {
        const Modulus m(q);
        for (Int y = 1; y < q; ++y) {
            std::set<Int> image;
            for (Int x = 0; x < q; ++x) image.insert(modmul(x, y, m));
            const bool bijective = static_cast<Int>(image.size()) == q;
            REQUIRE(bijective == (testing::gcd(y, q) == 1));
        }
    }
}

TEST_CASE("inverse") {
    const Modulus q13(13);
    CHECK(modinv(10, q13) == 4);
    CHECK(modinv(1, q13) == 1);
    CHECK(failure([] { modinv(2, Modulus(6)); }) == ArithErrorKind::NonCoprimeModulus);
    CHECK(failure([&] { modinv(0, q13); }) == ArithErrorKind::NonCoprimeModulus);
    CHECK(failure([&] { modinv(13, q13); }) == ArithErrorKind::OperandOutOfRange);
    for (Int q : {2, 7, 12, 101, 1009}) {
        const Modulus m(q);
        for (Int y = 1; y < q; ++y) {
            if (testing::gcd(y, q) != 1) continue;
            REQUIRE(modmul(y, modinv(y, m), m) == 1);
        }
    }
    const Modulus big(1000000007);
    CHECK(modmul(123456789, modinv(123456789, big), big) == 1);
}

TEST_CASE("power") {
    const Modulus q13(13);
    CHECK(modpow(10, 4, q13) == 3);
    CHECK(modpow(0, 1, q13) == 0);
    for (Int b = 0; b < 13; ++b) CHECK(modpow(b, 0, q13) == 1);
    CHECK(modpow(0, 0, Modulus(1)) == 0);
    CHECK(failure([&] { modpow(2, -1, q13); }) == ArithErrorKind::OperandOutOfRange);
    CHECK(failure([&] { modpow(13, 1, q13); }) == ArithErrorKind::OperandOutOfRange);

    // n multiplications, no shortcuts.
    OpCounter ops;
    modpow(3, 17, Modulus(101), &ops);
    CHECK(ops.ops == 17);
}

TEST_CASE("context construction") {
    CHECK_NOTHROW(ModContext(13, 10));
    CHECK(failure([] { ModContext(13, 13); }) == ArithErrorKind::OperandOutOfRange);
    CHECK(failure([] { ModContext(13, 0); }) == ArithErrorKind::OperandOutOfRange);
    CHECK(failure([] { ModContext(6, 2); }) == ArithErrorKind::NonCoprimeModulus);
    CHECK(failure([] { ModContext(INT64_MAX, 3); }) == ArithErrorKind::WordOverflow);
}

TEST_CASE("Horner hash") {
    const std::vector<Int> x{3, 1, 4, 1, 5};
    const ModContext ctx(13, 10);
    CHECK(hornerHash({x, 0, 5}, ctx) == 7);
    CHECK(hornerHash({x, 2, 2}, ctx) == 0);
    CHECK(hornerHash({x, 2, 3}, ctx) == 4);
    CHECK(hornerUnhash(7, {x, 0, 5}, ctx) == 0);
    CHECK_THROWS_AS(SubstringView(x, 3, 6), std::out_of_range);
    CHECK_THROWS_AS(SubstringView(x, 4, 3), std::out_of_range);

    const std::vector<Int> bad{1, 10};
    CHECK(failure([&] { hornerHash({bad, 0, 2}, ctx); }) == ArithErrorKind::OperandOutOfRange);
}

TEST_CASE("Horner hash agrees with exact polynomial evaluation") {
    std::mt19937_64 rng(1);
    for (int k = 0; k < 500; ++k) {
        const Int d = std::uniform_int_distribution<Int>(2, 12)(rng);
        Int q = std::uniform_int_distribution<Int>(d + 1, 5000)(rng);
        while (std::gcd(d, q) != 1) ++q;
        const ModContext ctx(q, d);
        std::vector<Int> x(std::uniform_int_distribution<std::size_t>(0, 15)(rng));
        for (auto& v : x) v = std::uniform_int_distribution<Int>(0, d - 1)(rng);
        const auto i = std::uniform_int_distribution<std::size_t>(0, x.size())(rng);
        const auto j = std::uniform_int_distribution<std::size_t>(i, x.size())(rng);
        const Int h = hornerHash({x, i, j}, ctx);
        REQUIRE(h == testing::polynomialHash(x, i, j, d, q));
        REQUIRE(hornerUnhash(h, {x, i, j}, ctx) == 0);
    }
}

TEST_CASE("rolling update") {
    const ModContext ctx(13, 10);
    CHECK(rollUpdate(7, 3, 2, 3, ctx) == 8);
    CHECK(rollUpdateInverse(8, 3, 2, 3, ctx) == 7);
    for (Int t = 0; t < 13; ++t)
        for (Int c = 0; c < 10; ++c) {
            // m = 1: h = 1 and the window is a single digit.
            const ModContext one(13, 10);
            CHECK(rollUpdate(c, c, c, 1, one) == c);
            CHECK(rollUpdateInverse(rollUpdate(t, c, 9 - c, 3, ctx), c, 9 - c, 3, ctx) == t);
        }

    OpCounter ops;
    rollUpdate(7, 3, 2, 3, ctx, &ops);
    CHECK(ops.ops == 4);
    CHECK(failure([&] { rollUpdate(7, 10, 2, 3, ctx); }) == ArithErrorKind::OperandOutOfRange);
    CHECK(failure([&] { rollUpdate(13, 1, 2, 3, ctx); }) == ArithErrorKind::OperandOutOfRange);
}

TEST_CASE("rolling update is a bijection in t") {
    for (Int q : {5, 7, 13, 31, 101}) {
        for (Int d = 2; d < q && d <= 12; ++d) {
            if (std::gcd(d, q) != 1) continue;
            const ModContext ctx(q, d);
            const Int h = modpow(d, 3, ctx.modulus());
            for (Int a = 0; a < d; ++a) {
                const Int b = (a * 7 + 1) % d;
                std::set<Int> image;
                for (Int t = 0; t < q; ++t) {
                    const Int u = rollUpdate(t, a, b, h, ctx);
                    image.insert(u);
                    REQUIRE(rollUpdateInverse(u, a, b, h, ctx) == t);
                }
                REQUIRE(static_cast<Int>(image.size()) == q);
            }
        }
    }
}
