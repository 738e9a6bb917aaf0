#include "rsm/modarith.hpp"

#include <limits>
#include <numeric>

namespace rsm {

std::string_view to_string(ArithErrorKind kind) {
    switch (kind) {
    case ArithErrorKind::OperandOutOfRange: return "OperandOutOfRange";
    case ArithErrorKind::NonCoprimeModulus: return "NonCoprimeModulus";
    case ArithErrorKind::WordOverflow: return "WordOverflow";
    }
    return "?";
}

ArithError::ArithError(ArithErrorKind kind, const std::string& message)
    : std::domain_error(message), kind_(kind) {}

namespace {

void tick(OpCounter* counter) {
    if (counter) ++counter->ops;
}

void requireResidue(Int x, Modulus q, const char* what) {
    if (!q.contains(x))
        throw ArithError(ArithErrorKind::OperandOutOfRange,
                         std::string(what) + " " + std::to_string(x) + " not in [0, " +
                             std::to_string(q.value()) + ")");
}

} // namespace

Modulus::Modulus(Int q) : q_(q) {
    if (q < 1)
        throw ArithError(ArithErrorKind::OperandOutOfRange,
                         "modulus " + std::to_string(q) + " must be positive");
}

Int modadd(Int x, Int y, Modulus q, OpCounter* counter) {
    requireResidue(x, q, "operand");
    requireResidue(y, q, "operand");
    tick(counter);
    // x, y < q <= INT64_MAX, so x - (q - y) cannot overflow.
    return x >= q.value() - y ? x - (q.value() - y) : x + y;
}

Int modsub(Int x, Int y, Modulus q, OpCounter* counter) {
    requireResidue(x, q, "operand");
    requireResidue(y, q, "operand");
    tick(counter);
    return x >= y ? x - y : x + (q.value() - y);
}

Int modmul(Int x, Int y, Modulus q, OpCounter* counter) {
    requireResidue(x, q, "operand");
    requireResidue(y, q, "operand");
    tick(counter);
    const __int128 product = static_cast<__int128>(x) * y;
    return static_cast<Int>(product % q.value());
}

void requireCoprime(Int y, Modulus q) {
    if (std::gcd(y, q.value()) != 1)
        throw ArithError(ArithErrorKind::NonCoprimeModulus,
                         "gcd(" + std::to_string(y) + ", " + std::to_string(q.value()) +
                             ") != 1");
}

Int modinv(Int y, Modulus q, OpCounter* counter) {
    requireResidue(y, q, "operand");
    requireCoprime(y, q);
    tick(counter);
    // Invariant: r0 = s0 * y (mod q), r1 = s1 * y (mod q).
    Int r0 = q.value(), r1 = y;
    Int s0 = 0, s1 = 1;
    while (r1 != 0) {
        Int quotient = r0 / r1;
        Int r2 = r0 - quotient * r1;
        r0 = r1;
        r1 = r2;
        // |s| stays below q, so the product fits in 128 bits trivially.
        Int s2 = static_cast<Int>(static_cast<__int128>(s0) - static_cast<__int128>(quotient) * s1);
        s0 = s1;
        s1 = s2;
    }
    Int z = s0 % q.value();
    return z < 0 ? z + q.value() : z;
}

Int modpow(Int b, Int n, Modulus q, OpCounter* counter) {
    requireResidue(b, q, "base");
    if (n < 0)
        throw ArithError(ArithErrorKind::OperandOutOfRange,
                         "exponent " + std::to_string(n) + " is negative");
    // 1 mod q, which is 0 for q = 1.
    Int z = q.value() == 1 ? 0 : 1;
    for (Int k = 0; k < n; ++k) z = modmul(z, b, q, counter);
    return z;
}

ModContext::ModContext(Int q, Int d) : q_(q), d_(d) {
    if (d <= 0 || d >= q)
        throw ArithError(ArithErrorKind::OperandOutOfRange,
                         "radix d = " + std::to_string(d) + " must satisfy 0 < d < q = " +
                             std::to_string(q));
    Int product;
    if (__builtin_mul_overflow(d, q, &product))
        throw ArithError(ArithErrorKind::WordOverflow,
                         "d * q = " + std::to_string(d) + " * " + std::to_string(q) +
                             " does not fit in a word");
    requireCoprime(d, q_);
}

SubstringView::SubstringView(std::span<const Int> data_, std::size_t begin_, std::size_t end_)
    : data(data_), begin(begin_), end(end_) {
    if (begin > end || end > data.size())
        throw std::out_of_range("substring [" + std::to_string(begin) + ", " +
                                std::to_string(end) + ") outside array of length " +
                                std::to_string(data.size()));
}

namespace {

Int requireDigit(Int x, const ModContext& ctx) {
    if (x < 0 || x >= ctx.d())
        throw ArithError(ArithErrorKind::OperandOutOfRange,
                         "digit " + std::to_string(x) + " not in [0, " +
                             std::to_string(ctx.d()) + ")");
    return x;
}

Int digit(SubstringView view, std::size_t k, const ModContext& ctx) {
    return requireDigit(view.data[k], ctx);
}

} // namespace

Int hornerHash(SubstringView view, const ModContext& ctx, OpCounter* counter) {
    Int x = 0;
    for (std::size_t k = view.begin; k < view.end; ++k) {
        x = modmul(x, ctx.d(), ctx.modulus(), counter);
        x = modadd(x, digit(view, k, ctx), ctx.modulus(), counter);
    }
    return x;
}

Int hornerUnhash(Int value, SubstringView view, const ModContext& ctx, OpCounter* counter) {
    const Int dInv = modinv(ctx.d(), ctx.modulus(), counter);
    Int x = value;
    for (std::size_t k = view.end; k-- > view.begin;) {
        x = modsub(x, digit(view, k, ctx), ctx.modulus(), counter);
        x = modmul(x, dInv, ctx.modulus(), counter);
    }
    return x;
}

Int rollUpdate(Int t, Int oldDigit, Int newDigit, Int h, const ModContext& ctx,
               OpCounter* counter) {
    const Modulus q = ctx.modulus();
    requireDigit(oldDigit, ctx);
    requireDigit(newDigit, ctx);
    Int x = modsub(t, modmul(oldDigit, h, q, counter), q, counter);
    x = modmul(x, ctx.d(), q, counter);
    return modadd(x, newDigit, q, counter);
}

Int rollUpdateInverse(Int t, Int oldDigit, Int newDigit, Int h, const ModContext& ctx,
                      OpCounter* counter) {
    const Modulus q = ctx.modulus();
    requireDigit(oldDigit, ctx);
    requireDigit(newDigit, ctx);
    Int x = modsub(t, newDigit, q, counter);
    x = modmul(x, modinv(ctx.d(), q, counter), q, counter);
    return modadd(x, modmul(oldDigit, h, q, counter), q, counter);
}

} // namespace rsm
