#pragma once

// Native string matchers and the brute-force oracle.
//
// Inputs are integer strings over {0, ..., d-2}. sentinelize() appends the
// terminators the reversible matchers rely on: P[m] = d-1, which never occurs
// in the text, and T[n] = d, which differs from P[m]. The compare loop
// therefore always stops at or before i = m.

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "rsm/interp.hpp"
#include "rsm/modarith.hpp"

namespace rsm {

enum class MatchErrorKind {
    SymbolOutOfRange,
    EmptyPattern,
    PatternLongerThanText,
    ShiftOutOfRange,
    UnknownCorpusName,
};

std::string_view to_string(MatchErrorKind kind);

class MatchError : public std::invalid_argument {
public:
    MatchError(MatchErrorKind kind, const std::string& message);
    MatchErrorKind kind() const { return kind_; }

private:
    MatchErrorKind kind_;
};

/// Alphabet size including the pattern sentinel symbol.
struct Alphabet {
    Int size = 2;
};

/// T[0..n], T[n] is the terminator.
struct TextBuffer {
    std::vector<Int> symbols;
    std::size_t length() const { return symbols.size() - 1; }
};

/// P[0..m], P[m] is the sentinel d-1.
struct PatternBuffer {
    std::vector<Int> symbols;
    std::size_t length() const { return symbols.size() - 1; }
};

struct MatchInput {
    TextBuffer text;
    PatternBuffer pattern;
    Alphabet alphabet;
};

/// Symbols must lie in [0, realAlphabetSize); the pattern must be non-empty
/// and no longer than the text. The resulting alphabet has size
/// realAlphabetSize + 1.
MatchInput sentinelize(std::span<const Int> text, std::span<const Int> pattern,
                       Int realAlphabetSize);

/// Valid shifts in the order they were found; back() is the top of stack.
struct ShiftStack {
    std::vector<Int> shifts;
    Int cursor = 0;  // next shift to examine; n - m + 1 after a full search
    bool operator==(const ShiftStack&) const = default;
};

/// Rolling-hash registers. After a completed rabinKarp all three are
/// uncomputed back to zero.
struct HashState {
    Int p = 0;
    Int t = 0;
    Int h = 0;
    bool operator==(const HashState&) const = default;
};

struct SearchResult {
    ShiftStack stack;
    RunStats stats;     // comparisons = character comparisons, calls = exact matches,
                        // updates = rolling updates, stackOps = pushes
    HashState residue;  // always zero for naiveSearch
};

/// The reversible compare loop: starting from i = 0, advance while
/// T[s+i] == P[i]. Returns the final i, which equals m exactly when s is a
/// valid shift.
std::size_t compareAt(const TextBuffer& text, const PatternBuffer& pattern, std::size_t s,
                      RunStats* stats = nullptr);

SearchResult naiveSearch(const TextBuffer& text, const PatternBuffer& pattern);

/// Hash-gated search. Hashes use the alphabet size d from `ctx`, which must
/// include the sentinel symbol.
SearchResult rabinKarp(const TextBuffer& text, const PatternBuffer& pattern,
                       const ModContext& ctx);

/// Every s with text[s..s+m-1] == pattern, by a plain double loop.
std::vector<Int> bruteForceShifts(std::span<const Int> text, std::span<const Int> pattern);

} // namespace rsm
