#pragma once

// The matcher programs shipped with the library, and helpers that run them
// on sentinelized inputs.

#include <string_view>
#include <vector>

#include "rsm/ast.hpp"
#include "rsm/interp.hpp"
#include "rsm/matchers.hpp"

namespace rsm {

enum class CorpusName { Naive, RabinKarp };

std::string_view to_string(CorpusName name);

/// "naive" or "rabinkarp"; throws MatchError(UnknownCorpusName) otherwise.
CorpusName corpusNameFromString(std::string_view name);

std::string_view corpusProgram(CorpusName name);
std::string_view corpusProgram(std::string_view name);

/// Parsed and validated once, then shared.
const Program& corpusAst(CorpusName name);

/// Entry procedure: naivesearch or rabinkarp.
std::string_view corpusEntry(CorpusName name);

/// Initial store for a corpus run: T[], P[], m, n and an empty stack R; the
/// Rabin-Karp program also gets d and q.
Store corpusStore(CorpusName name, const MatchInput& input, Int q = 0);

struct InterpretedSearch {
    Store initial;
    Store final;
    RunStats stats;
    std::vector<Int> shifts;  // ascending, bottom of R first
};

InterpretedSearch interpretSearch(CorpusName name, const MatchInput& input, Int q = 0);

} // namespace rsm
