#pragma once

// Execution state: a map from names to integers, integer arrays and integer
// stacks, together with its line-oriented text form:
//
//   name = <int>
//   name[] = <int> <int> ...
//   name : stack = <top> <next> ...
//
// Blank lines and `#` comments are ignored.

#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rsm/ast.hpp"

namespace rsm {

struct IntArray {
    std::vector<Int> elems;
    bool operator==(const IntArray&) const = default;
};

/// Items are stored bottom first; back() is the top.
struct IntStack {
    std::vector<Int> items;
    bool operator==(const IntStack&) const = default;
};

using Value = std::variant<Int, IntArray, IntStack>;

ParamKind kindOf(const Value& value);

using Store = std::map<std::string, Value, std::less<>>;

class StoreFormatError : public std::runtime_error {
public:
    StoreFormatError(int line, const std::string& message);
    int line() const { return line_; }

private:
    int line_;
};

Store parseStore(std::string_view text);

/// Canonical text form, one binding per line in name order.
std::string formatStore(const Store& store);

} // namespace rsm
