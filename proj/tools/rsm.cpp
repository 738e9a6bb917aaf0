// rsm: parse, run, invert and match with the reversible language toolkit.
//
// Exit codes: 0 success, 1 runtime error, 2 parse or static error, 3 usage.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "rsm/corpus.hpp"
#include "rsm/interp.hpp"
#include "rsm/invert.hpp"
#include "rsm/matchers.hpp"
#include "rsm/syntax.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kRuntime = 1;
constexpr int kParse = 2;
constexpr int kUsage = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string readFile(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Any error thrown while loading a program maps to exit code 2.
rsm::Program loadProgram(const std::string& path) { return rsm::parse(readFile(path)); }

void printStats(const rsm::RunStats& s) {
    std::cout << "# updates = " << s.updates << '\n'
              << "# comparisons = " << s.comparisons << '\n'
              << "# calls = " << s.calls << '\n'
              << "# stackOps = " << s.stackOps << '\n'
              << "# kernelOps = " << s.kernelOps << '\n';
}

std::vector<rsm::Int> parseSymbols(const std::vector<std::string>& words, const char* what) {
    std::vector<rsm::Int> out;
    for (const auto& w : words) {
        std::istringstream in(w);
        std::string tok;
        while (in >> tok) {
            std::size_t used = 0;
            long long v = 0;
            try {
                v = std::stoll(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw UsageError(std::string("bad ") + what + " symbol '" + tok + "'");
            out.push_back(v);
        }
    }
    return out;
}

std::vector<rsm::Int> asciiSymbols(const std::vector<std::string>& words) {
    std::string joined;
    for (std::size_t k = 0; k < words.size(); ++k) {
        if (k) joined += ' ';
        joined += words[k];
    }
    std::vector<rsm::Int> out;
    for (unsigned char c : joined) out.push_back(c);
    return out;
}

struct MatchOptions {
    std::string algo = "naive";
    std::vector<std::string> text;
    std::vector<std::string> pattern;
    rsm::Int alphabet = 0;
    rsm::Int q = 1000003;
    std::string engine = "native";
    bool stats = false;
    bool ascii = false;
};

int cmdMatch(const MatchOptions& o) {
    std::vector<rsm::Int> text, pattern;
    rsm::Int alphabet = o.alphabet;
    if (o.ascii) {
        text = asciiSymbols(o.text);
        pattern = asciiSymbols(o.pattern);
        alphabet = 256;
    } else {
        if (alphabet < 1) throw UsageError("--alphabet is required and must be positive");
        text = parseSymbols(o.text, "text");
        pattern = parseSymbols(o.pattern, "pattern");
    }

    rsm::MatchInput in;
    try {
        in = rsm::sentinelize(text, pattern, alphabet);
    } catch (const rsm::MatchError& e) {
        throw UsageError(e.what());
    }

    const bool rk = o.algo == "rk";
    std::vector<rsm::Int> shifts;
    rsm::RunStats stats;
    if (o.engine == "native") {
        rsm::SearchResult r = rk ? rsm::rabinKarp(in.text, in.pattern,
                                                  rsm::ModContext(o.q, in.alphabet.size))
                                 : rsm::naiveSearch(in.text, in.pattern);
        shifts = r.stack.shifts;
        stats = r.stats;
    } else {
        if (rk) rsm::ModContext(o.q, in.alphabet.size);  // same checks as the native engine
        auto r = rsm::interpretSearch(rk ? rsm::CorpusName::RabinKarp : rsm::CorpusName::Naive,
                                      in, o.q);
        shifts = r.shifts;
        stats = r.stats;
    }
    for (rsm::Int s : shifts) std::cout << s << '\n';
    if (o.stats) printStats(stats);
    return kOk;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Reversible string matching toolkit"};
    app.require_subcommand(1);

    std::string file, stateFile, proc;
    bool backward = false, stats = false;

    auto* parseCmd = app.add_subcommand("parse", "Check a program and pretty-print it");
    parseCmd->add_option("file", file, "Program source")->required();

    auto* runCmd = app.add_subcommand("run", "Run a procedure on a store");
    runCmd->add_option("file", file, "Program source")->required();
    runCmd->add_option("--proc", proc, "Entry procedure")->required();
    runCmd->add_option("--state", stateFile, "Initial store file")->required();
    runCmd->add_flag("--backward", backward, "Run the procedure backward");
    runCmd->add_flag("--stats", stats, "Print step counters as # comments");

    auto* invertCmd = app.add_subcommand("invert", "Print the inverse program");
    invertCmd->add_option("file", file, "Program source")->required();

    MatchOptions mo;
    auto* matchCmd = app.add_subcommand("match", "Find all valid shifts of a pattern");
    matchCmd->add_option("--algo", mo.algo, "naive or rk")
        ->check(CLI::IsMember({"naive", "rk"}));
    matchCmd->add_option("--text", mo.text, "Text symbols")->required()->expected(1, -1);
    matchCmd->add_option("--pattern", mo.pattern, "Pattern symbols")->required()->expected(1, -1);
    matchCmd->add_option("--alphabet", mo.alphabet, "Number of real symbols D");
    matchCmd->add_option("--q", mo.q, "Hash modulus (coprime with D + 1)");
    matchCmd->add_option("--engine", mo.engine, "native or interp")
        ->check(CLI::IsMember({"native", "interp"}));
    matchCmd->add_flag("--stats", mo.stats, "Print step counters as # comments");
    matchCmd->add_flag("--ascii", mo.ascii, "Treat text and pattern as bytes, D = 256");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    if (*matchCmd) return cmdMatch(mo);

    rsm::Program program;
    try {
        program = loadProgram(file);
    } catch (const rsm::ParseError& e) {
        std::cerr << file << ":" << e.what() << '\n';
        return kParse;
    } catch (const rsm::StaticCheckFailed& e) {
        for (const auto& err : e.errors()) std::cerr << file << ":" << rsm::to_string(err) << '\n';
        return kParse;
    }

    if (*parseCmd) {
        std::cout << rsm::pretty(program);
        return kOk;
    }
    if (*invertCmd) {
        std::cout << rsm::pretty(rsm::invertProgram(program));
        return kOk;
    }

    rsm::Store store;
    try {
        store = rsm::parseStore(readFile(stateFile));
    } catch (const rsm::StoreFormatError& e) {
        std::cerr << stateFile << ":" << e.what() << '\n';
        return kParse;
    }
    auto result = rsm::run(program, proc, std::move(store),
                           backward ? rsm::Direction::Backward : rsm::Direction::Forward);
    std::cout << rsm::formatStore(result.store);
    if (stats) printStats(result.stats);
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const UsageError& e) {
        std::cerr << "rsm: " << e.what() << '\n';
        return kUsage;
    } catch (const rsm::RuntimeError& e) {
        std::cerr << "rsm: " << e.what() << '\n';
        return kRuntime;
    } catch (const rsm::ArithError& e) {
        std::cerr << "rsm: " << to_string(e.kind()) << ": " << e.what() << '\n';
        return kRuntime;
    }
}
