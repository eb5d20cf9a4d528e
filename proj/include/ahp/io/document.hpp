#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ahp/rule.hpp"
#include "ahp/strategy.hpp"

namespace ahp {

/// Signature plus named graphs, rules and strategies, in declaration order.
struct Document {
    Signature signature;
    std::vector<std::pair<std::string, AhpGraph>> graphs;
    std::vector<Rule> rules;
    std::vector<std::pair<std::string, Strategy>> strategies;

    const AhpGraph* graph(const std::string& name) const;
    const Rule* rule(const std::string& name) const;
    const Strategy* strategy(const std::string& name) const;
    std::map<std::string, Rule> rule_map() const;

    friend bool operator==(const Document&, const Document&) = default;
};

class ParseError : public std::runtime_error {
public:
    ParseError(int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          line(line),
          column(column) {}
    int line;
    int column;
};

/// Syntax and reference errors throw ParseError. Elements without an explicit
/// @id get ids above the largest explicit one, in declaration order.
Document parse_document(std::string_view text);

/// Canonical text; every element carries its id, so parse(emit(d)) == d.
std::string emit_document(const Document& doc);

/// Expression in document syntax, e.g. "X * 0.5 > 1".
Expr parse_expression(std::string_view text);

/// Signature, graphs (variable-free) and rules, with item names in messages.
std::vector<Violation> validate_document(const Document& doc);

} // namespace ahp
