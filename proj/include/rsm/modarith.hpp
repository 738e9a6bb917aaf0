#pragma once

// Injective modular-arithmetic kernel.
//
// All residues live in [0, q). Addition and subtraction are injective in
// their first argument for any q; multiplication by y is injective in its
// first argument exactly when gcd(y, q) = 1. Every operation checks its
// operand ranges instead of silently reducing out-of-range inputs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rsm {

using Int = std::int64_t;

enum class ArithErrorKind { OperandOutOfRange, NonCoprimeModulus, WordOverflow };

std::string_view to_string(ArithErrorKind kind);

class ArithError : public std::domain_error {
public:
    ArithError(ArithErrorKind kind, const std::string& message);
    ArithErrorKind kind() const { return kind_; }

private:
    ArithErrorKind kind_;
};

/// Counts elementary kernel operations (one per +q, -q, *q, inverse).
struct OpCounter {
    std::uint64_t ops = 0;
};

class Modulus {
public:
    /// Throws OperandOutOfRange unless q >= 1.
    explicit Modulus(Int q);

    Int value() const { return q_; }
    bool contains(Int x) const { return 0 <= x && x < q_; }

private:
    Int q_;
};

Int modadd(Int x, Int y, Modulus q, OpCounter* counter = nullptr);
Int modsub(Int x, Int y, Modulus q, OpCounter* counter = nullptr);

/// (x * y) mod q through a 128-bit intermediate. Both operands must be
/// residues; injectivity in x additionally needs gcd(y, q) = 1, which the
/// caller checks where it matters (see requireCoprime).
Int modmul(Int x, Int y, Modulus q, OpCounter* counter = nullptr);

/// z with (y * z) mod q = 1, by the extended Euclidean algorithm.
Int modinv(Int y, Modulus q, OpCounter* counter = nullptr);

/// b^n mod q by n successive multiplications, starting from 1.
Int modpow(Int b, Int n, Modulus q, OpCounter* counter = nullptr);

/// Throws NonCoprimeModulus unless gcd(y, q) = 1.
void requireCoprime(Int y, Modulus q);

/// Hash parameters: modulus q and radix d (alphabet size, including the
/// pattern sentinel). Construction enforces 0 < d < q, gcd(d, q) = 1 and
/// that d * q fits in a 64-bit word.
class ModContext {
public:
    ModContext(Int q, Int d);

    Modulus modulus() const { return q_; }
    Int q() const { return q_.value(); }
    Int d() const { return d_; }

private:
    Modulus q_;
    Int d_;
};

/// X[begin, end) of a digit array.
struct SubstringView {
    std::span<const Int> data;
    std::size_t begin = 0;
    std::size_t end = 0;

    /// Throws std::out_of_range unless begin <= end <= data.size().
    SubstringView(std::span<const Int> data, std::size_t begin, std::size_t end);

    std::size_t size() const { return end - begin; }
};

/// Horner evaluation of X[i..j-1] as a radix-d number, mod q. Every digit
/// must satisfy 0 <= X[k] < d. The empty view hashes to 0.
Int hornerHash(SubstringView view, const ModContext& ctx, OpCounter* counter = nullptr);

/// Runs the Horner steps of hornerHash backward from `value`: returns the
/// accumulator value the forward run must have started from. In particular
/// hornerUnhash(hornerHash(v), v) == 0.
Int hornerUnhash(Int value, SubstringView view, const ModContext& ctx,
                 OpCounter* counter = nullptr);

/// The rolling-hash step: d *q (t -q oldDigit *q h) +q newDigit. With
/// h = d^(m-1) mod q it maps the hash of T[s..s+m-1] to that of
/// T[s+1..s+m]. A bijection on [0, q) in t.
Int rollUpdate(Int t, Int oldDigit, Int newDigit, Int h, const ModContext& ctx,
               OpCounter* counter = nullptr);

Int rollUpdateInverse(Int t, Int oldDigit, Int newDigit, Int h, const ModContext& ctx,
                      OpCounter* counter = nullptr);

} // namespace rsm
