#include "rsm/matchers.hpp"

namespace rsm {

std::string_view to_string(MatchErrorKind kind) {
    switch (kind) {
    case MatchErrorKind::SymbolOutOfRange: return "SymbolOutOfRange";
    case MatchErrorKind::EmptyPattern: return "EmptyPattern";
    case MatchErrorKind::PatternLongerThanText: return "PatternLongerThanText";
    case MatchErrorKind::ShiftOutOfRange: return "ShiftOutOfRange";
    case MatchErrorKind::UnknownCorpusName: return "UnknownCorpusName";
    }
    return "?";
}

MatchError::MatchError(MatchErrorKind kind, const std::string& message)
    : std::invalid_argument(message), kind_(kind) {}

namespace {

void requireLengths(std::size_t n, std::size_t m) {
    if (m == 0) throw MatchError(MatchErrorKind::EmptyPattern, "pattern is empty");
    if (m > n)
        throw MatchError(MatchErrorKind::PatternLongerThanText,
                         "pattern length " + std::to_string(m) + " exceeds text length " +
                             std::to_string(n));
}

void requireSymbols(std::span<const Int> symbols, Int alphabetSize, const char* what) {
    for (std::size_t k = 0; k < symbols.size(); ++k) {
        if (symbols[k] < 0 || symbols[k] >= alphabetSize)
            throw MatchError(MatchErrorKind::SymbolOutOfRange,
                             std::string(what) + " symbol " + std::to_string(symbols[k]) +
                                 " at " + std::to_string(k) + " not in [0, " +
                                 std::to_string(alphabetSize) + ")");
    }
}

} // namespace

MatchInput sentinelize(std::span<const Int> text, std::span<const Int> pattern,
                       Int realAlphabetSize) {
    if (realAlphabetSize < 1)
        throw MatchError(MatchErrorKind::SymbolOutOfRange, "alphabet must have a symbol");
    requireSymbols(text, realAlphabetSize, "text");
    requireSymbols(pattern, realAlphabetSize, "pattern");
    requireLengths(text.size(), pattern.size());

    MatchInput in;
    in.alphabet.size = realAlphabetSize + 1;
    in.pattern.symbols.assign(pattern.begin(), pattern.end());
    in.pattern.symbols.push_back(in.alphabet.size - 1);
    in.text.symbols.assign(text.begin(), text.end());
    in.text.symbols.push_back(in.alphabet.size);
    return in;
}

std::size_t compareAt(const TextBuffer& text, const PatternBuffer& pattern, std::size_t s,
                      RunStats* stats) {
    const std::size_t n = text.length();
    const std::size_t m = pattern.length();
    if (m > n || s > n - m)
        throw MatchError(MatchErrorKind::ShiftOutOfRange,
                         "shift " + std::to_string(s) + " outside [0, " +
                             std::to_string(n >= m ? n - m : 0) + "]");
    std::size_t i = 0;
    for (;;) {
        if (stats) ++stats->comparisons;
        if (text.symbols[s + i] != pattern.symbols[i]) return i;
        ++i;
    }
}

SearchResult naiveSearch(const TextBuffer& text, const PatternBuffer& pattern) {
    const std::size_t n = text.length();
    const std::size_t m = pattern.length();
    requireLengths(n, m);
    SearchResult r;
    for (std::size_t s = 0; s <= n - m; ++s) {
        ++r.stats.calls;
        if (compareAt(text, pattern, s, &r.stats) == m) {
            r.stack.shifts.push_back(static_cast<Int>(s));
            ++r.stats.stackOps;
        }
        r.stack.cursor = static_cast<Int>(s + 1);
    }
    return r;
}

SearchResult rabinKarp(const TextBuffer& text, const PatternBuffer& pattern,
                       const ModContext& ctx) {
    const std::size_t n = text.length();
    const std::size_t m = pattern.length();
    requireLengths(n, m);
    const Modulus q = ctx.modulus();
    const std::span<const Int> T = text.symbols;
    const std::span<const Int> P = pattern.symbols;

    SearchResult r;
    OpCounter kernel;
    HashState& hs = r.residue;
    hs.p = hornerHash({P, 0, m}, ctx, &kernel);
    hs.t = hornerHash({T, 0, m}, ctx, &kernel);
    hs.h = modpow(ctx.d(), static_cast<Int>(m - 1), q, &kernel);

    for (std::size_t s = 0; s <= n - m; ++s) {
        if (hs.p == hs.t) {
            ++r.stats.calls;
            if (compareAt(text, pattern, s, &r.stats) == m) {
                r.stack.shifts.push_back(static_cast<Int>(s));
                ++r.stats.stackOps;
            }
        }
        // The last window has no successor; t stays at the hash of T[n-m..n-1].
        if (s < n - m) {
            hs.t = rollUpdate(hs.t, T[s], T[s + m], hs.h, ctx, &kernel);
            ++r.stats.updates;
        }
        r.stack.cursor = static_cast<Int>(s + 1);
    }

    hs.h = modsub(hs.h, modpow(ctx.d(), static_cast<Int>(m - 1), q, &kernel), q, &kernel);
    hs.t = hornerUnhash(hs.t, {T, n - m, n}, ctx, &kernel);
    hs.p = hornerUnhash(hs.p, {P, 0, m}, ctx, &kernel);
    r.stats.kernelOps = kernel.ops;
    return r;
}

std::vector<Int> bruteForceShifts(std::span<const Int> text, std::span<const Int> pattern) {
    requireLengths(text.size(), pattern.size());
    std::vector<Int> out;
    for (std::size_t s = 0; s + pattern.size() <= text.size(); ++s) {
        bool equal = true;
        for (std::size_t k = 0; k < pattern.size() && equal; ++k)
            equal = text[s + k] == pattern[k];
        if (equal) out.push_back(static_cast<Int>(s));
    }
    return out;
}

} // namespace rsm
