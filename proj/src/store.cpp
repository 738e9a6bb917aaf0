#include "rsm/store.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace rsm {

ParamKind kindOf(const Value& value) {
    switch (value.index()) {
    case 0: return ParamKind::Int;
    case 1: return ParamKind::IntArray;
    default: return ParamKind::Stack;
    }
}

StoreFormatError::StoreFormatError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

bool validName(std::string_view s) {
    if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

std::vector<Int> parseInts(std::string_view s, int line) {
    std::vector<Int> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
        std::string_view tok = s.substr(i, j - i);
        Int v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc{} || ptr != tok.data() + tok.size())
            throw StoreFormatError(line, "bad integer '" + std::string(tok) + "'");
        out.push_back(v);
        i = j;
    }
    return out;
}

} // namespace

Store parseStore(std::string_view text) {
    Store store;
    int lineNo = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++lineNo;
        if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        auto eq = line.find('=');
        if (eq == std::string_view::npos) throw StoreFormatError(lineNo, "expected '='");
        std::string_view lhs = trim(line.substr(0, eq));
        std::string_view rhs = line.substr(eq + 1);

        std::string name;
        Value value;
        if (lhs.size() > 2 && lhs.substr(lhs.size() - 2) == "[]") {
            name = std::string(trim(lhs.substr(0, lhs.size() - 2)));
            value = IntArray{parseInts(rhs, lineNo)};
        } else if (auto colon = lhs.find(':'); colon != std::string_view::npos) {
            if (trim(lhs.substr(colon + 1)) != "stack")
                throw StoreFormatError(lineNo, "expected ': stack'");
            name = std::string(trim(lhs.substr(0, colon)));
            auto topFirst = parseInts(rhs, lineNo);
            value = IntStack{{topFirst.rbegin(), topFirst.rend()}};
        } else {
            name = std::string(lhs);
            auto ints = parseInts(rhs, lineNo);
            if (ints.size() != 1) throw StoreFormatError(lineNo, "expected exactly one integer");
            value = ints.front();
        }
        if (!validName(name)) throw StoreFormatError(lineNo, "bad name '" + name + "'");
        if (!store.emplace(name, std::move(value)).second)
            throw StoreFormatError(lineNo, "'" + name + "' bound twice");
    }
    return store;
}

std::string formatStore(const Store& store) {
    std::ostringstream os;
    for (const auto& [name, value] : store) {
        if (const auto* i = std::get_if<Int>(&value)) {
            os << name << " = " << *i;
        } else if (const auto* a = std::get_if<IntArray>(&value)) {
            os << name << "[] =";
            for (Int v : a->elems) os << ' ' << v;
        } else {
            const auto& s = std::get<IntStack>(value);
            os << name << " : stack =";
            for (auto it = s.items.rbegin(); it != s.items.rend(); ++it) os << ' ' << *it;
        }
        os << '\n';
    }
    return os.str();
}

} // namespace rsm
