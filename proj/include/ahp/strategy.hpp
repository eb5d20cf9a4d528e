#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ahp/rewrite.hpp"

namespace ahp {

struct Strategy {
    enum class Kind { Id, Fail, One, All, Seq, OrElse, Try, Repeat, If };

    Kind kind = Kind::Id;
    std::string rule;               // One, All
    std::vector<Strategy> children; // Seq/OrElse: 2, Try/Repeat: 1, If: 3

    static Strategy id() { return {Kind::Id, {}, {}}; }
    static Strategy fail() { return {Kind::Fail, {}, {}}; }
    static Strategy one(std::string r) { return {Kind::One, std::move(r), {}}; }
    static Strategy all(std::string r) { return {Kind::All, std::move(r), {}}; }
    static Strategy seq(Strategy a, Strategy b) { return {Kind::Seq, {}, {std::move(a), std::move(b)}}; }
    static Strategy orelse(Strategy a, Strategy b) { return {Kind::OrElse, {}, {std::move(a), std::move(b)}}; }
    static Strategy try_(Strategy a) { return {Kind::Try, {}, {std::move(a)}}; }
    static Strategy repeat(Strategy a) { return {Kind::Repeat, {}, {std::move(a)}}; }
    static Strategy if_(Strategy c, Strategy t, Strategy e) {
        return {Kind::If, {}, {std::move(c), std::move(t), std::move(e)}};
    }

    friend bool operator==(const Strategy&, const Strategy&) = default;
};

/// Canonical text form; parse_strategy(to_string(s)) == s.
std::string to_string(const Strategy& s);

class StrategyParseError : public std::runtime_error {
public:
    StrategyParseError(const std::string& message, int column)
        : std::runtime_error("column " + std::to_string(column) + ": " + message), column(column) {}
    int column;  // 1-based
};

/// Parses id | fail | one(r) | all(r) | seq(s, s, ...) | orelse(s, s) |
/// try(s) | repeat(s) | if(s, s, s) | (s), with `a; b` as sugar for seq.
Strategy parse_strategy(std::string_view text);

/// Rule names a strategy refers to.
std::set<std::string> rules_used(const Strategy& s);

/// Unknown rule names or a non-positive budget.
class StrategyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class RunStatus { Success, Failure, BudgetExhausted };
const char* to_string(RunStatus s);

struct RunOptions {
    std::uint64_t seed = 0;
    long budget = 10000;  // maximum number of rewrite steps
};

struct Derivation {
    AhpGraph initial;
    std::vector<RewriteStep> steps;
    AhpGraph final;
    RunStatus status = RunStatus::Success;
    long budget_used = 0;
    std::vector<std::string> diagnostics;
};

/// Runs a strategy. Matches are drawn uniformly from the canonical match list
/// with a generator seeded by options.seed, so equal seeds give equal runs.
Derivation run(const Strategy& s, const std::map<std::string, Rule>& rules, const AhpGraph& g,
               const RunOptions& options = {});

} // namespace ahp
