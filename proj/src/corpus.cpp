#include "rsm/corpus.hpp"

#include "corpus_sources.hpp"
#include "rsm/syntax.hpp"

namespace rsm {

std::string_view to_string(CorpusName name) {
    return name == CorpusName::Naive ? "naive" : "rabinkarp";
}

CorpusName corpusNameFromString(std::string_view name) {
    if (name == "naive") return CorpusName::Naive;
    if (name == "rabinkarp") return CorpusName::RabinKarp;
    throw MatchError(MatchErrorKind::UnknownCorpusName,
                     "unknown corpus program '" + std::string(name) + "'");
}

std::string_view corpusProgram(CorpusName name) {
    return name == CorpusName::Naive ? corpus_sources::naive : corpus_sources::rabinkarp;
}

std::string_view corpusProgram(std::string_view name) {
    return corpusProgram(corpusNameFromString(name));
}

const Program& corpusAst(CorpusName name) {
    static const Program naive = parse(corpus_sources::naive);
    static const Program rabinkarp = parse(corpus_sources::rabinkarp);
    return name == CorpusName::Naive ? naive : rabinkarp;
}

std::string_view corpusEntry(CorpusName name) {
    return name == CorpusName::Naive ? "naivesearch" : "rabinkarp";
}

Store corpusStore(CorpusName name, const MatchInput& input, Int q) {
    Store store;
    store.emplace("T", IntArray{input.text.symbols});
    store.emplace("P", IntArray{input.pattern.symbols});
    store.emplace("m", static_cast<Int>(input.pattern.length()));
    store.emplace("n", static_cast<Int>(input.text.length()));
    store.emplace("R", IntStack{});
    if (name == CorpusName::RabinKarp) {
        store.emplace("d", input.alphabet.size);
        store.emplace("q", q);
    }
    return store;
}

InterpretedSearch interpretSearch(CorpusName name, const MatchInput& input, Int q) {
    InterpretedSearch out;
    out.initial = corpusStore(name, input, q);
    auto result = run(corpusAst(name), corpusEntry(name), out.initial, Direction::Forward);
    out.final = std::move(result.store);
    out.stats = result.stats;
    out.shifts = std::get<IntStack>(out.final.at("R")).items;
    return out;
}

} // namespace rsm
