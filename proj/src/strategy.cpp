#include "ahp/strategy.hpp"

#include <cctype>
#include <random>

namespace ahp {

std::string to_string(const Strategy& s) {
    using K = Strategy::Kind;
    auto args = [&](const char* head) {
        std::string out = std::string(head) + "(";
        for (std::size_t i = 0; i < s.children.size(); ++i) out += (i ? ", " : "") + to_string(s.children[i]);
        return out + ")";
    };
    switch (s.kind) {
    case K::Id: return "id";
    case K::Fail: return "fail";
    case K::One: return "one(" + s.rule + ")";
    case K::All: return "all(" + s.rule + ")";
    case K::Seq: return args("seq");
    case K::OrElse: return args("orelse");
    case K::Try: return args("try");
    case K::Repeat: return args("repeat");
    default: return args("if");
    }
}

const char* to_string(RunStatus s) {
    switch (s) {
    case RunStatus::Success: return "success";
    case RunStatus::Failure: return "failure";
    default: return "budget-exhausted";
    }
}

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    Strategy parse() {
        Strategy s = sequence();
        skip_space();
        if (pos_ < text_.size()) error("unexpected '" + std::string(1, text_[pos_]) + "'");
        return s;
    }

private:
    [[noreturn]] void error(const std::string& msg) const { throw StrategyParseError(msg, static_cast<int>(pos_) + 1); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) error(std::string("expected '") + c + "'");
    }

    std::string identifier(const char* what) {
        skip_space();
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '-'))
            ++pos_;
        if (start == pos_ || std::isdigit(static_cast<unsigned char>(text_[start]))) {
            pos_ = start;
            error(std::string("expected ") + what);
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    Strategy sequence() {
        Strategy first = atom();
        if (!accept(';')) return first;
        return Strategy::seq(std::move(first), sequence());
    }

    std::vector<Strategy> arguments(std::size_t min, std::size_t max) {
        expect('(');
        std::vector<Strategy> args{sequence()};
        while (accept(',')) args.push_back(sequence());
        if (args.size() < min || args.size() > max) error("wrong number of arguments");
        expect(')');
        return args;
    }

    Strategy atom() {
        skip_space();
        if (accept('(')) {
            Strategy s = sequence();
            expect(')');
            return s;
        }
        std::size_t at = pos_;
        std::string word = identifier("a strategy");
        if (word == "id") return Strategy::id();
        if (word == "fail") return Strategy::fail();
        if (word == "one" || word == "all") {
            expect('(');
            std::string rule = identifier("rule name");
            expect(')');
            return word == "one" ? Strategy::one(rule) : Strategy::all(rule);
        }
        if (word == "seq") {
            auto args = arguments(2, static_cast<std::size_t>(-1));
            Strategy s = std::move(args.back());
            for (auto it = args.rbegin() + 1; it != args.rend(); ++it) s = Strategy::seq(std::move(*it), std::move(s));
            return s;
        }
        if (word == "orelse") {
            auto args = arguments(2, 2);
            return Strategy::orelse(std::move(args[0]), std::move(args[1]));
        }
        if (word == "try") return Strategy::try_(std::move(arguments(1, 1)[0]));
        if (word == "repeat") return Strategy::repeat(std::move(arguments(1, 1)[0]));
        if (word == "if") {
            auto args = arguments(3, 3);
            return Strategy::if_(std::move(args[0]), std::move(args[1]), std::move(args[2]));
        }
        pos_ = at;
        error("unknown strategy '" + word + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

struct BudgetExhausted {};

class Runner {
public:
    Runner(const std::map<std::string, Rule>& rules, const RunOptions& opt, Derivation& d)
        : rules_(rules), rng_(opt.seed), budget_(opt.budget), d_(d) {}

    bool exec(const Strategy& s, AhpGraph& g) {
        using K = Strategy::Kind;
        switch (s.kind) {
        case K::Id: return true;
        case K::Fail: return false;
        case K::One: return one(rules_.at(s.rule), g);
        case K::All: return all(rules_.at(s.rule), g);
        case K::Seq: return exec(s.children[0], g) && exec(s.children[1], g);
        case K::OrElse: return orelse(s.children[0], s.children[1], g);
        case K::Try: return orelse(s.children[0], Strategy::id(), g);
        case K::Repeat:
            for (;;) {
                AhpGraph saved = g;
                std::size_t before = d_.steps.size();
                if (!exec(s.children[0], g)) {
                    g = std::move(saved);
                    d_.steps.resize(before);
                    return true;
                }
                if (d_.steps.size() == before) return true;
            }
        case K::If: {
            AhpGraph probe = g;
            std::size_t before = d_.steps.size();
            bool ok = false;
            try {
                ok = exec(s.children[0], probe);
            } catch (const BudgetExhausted&) {
                d_.steps.resize(before);
                throw;
            }
            d_.steps.resize(before);
            return exec(s.children[ok ? 1 : 2], g);
        }
        }
        return false;
    }

private:
    bool orelse(const Strategy& a, const Strategy& b, AhpGraph& g) {
        AhpGraph saved = g;
        std::size_t before = d_.steps.size();
        if (exec(a, g)) return true;
        g = std::move(saved);
        d_.steps.resize(before);
        return exec(b, g);
    }

    std::vector<Match> matches(const Rule& r, const AhpGraph& g) { return find_matches(r, g, &d_.diagnostics); }

    void step(const Rule& r, AhpGraph& g, const Match& m) {
        if (d_.budget_used >= budget_) throw BudgetExhausted{};
        ++d_.budget_used;
        d_.steps.push_back(rewrite_step(r, g, m));
        g = d_.steps.back().after;
    }

    bool one(const Rule& r, AhpGraph& g) {
        auto ms = matches(r, g);
        if (ms.empty()) return false;
        std::uniform_int_distribution<std::size_t> pick(0, ms.size() - 1);
        step(r, g, ms[pick(rng_)]);
        return true;
    }

    // Greedy maximal set of node-disjoint matches in canonical order; each is
    // re-verified against the current graph before it is applied.
    bool all(const Rule& r, AhpGraph& g) {
        auto ms = matches(r, g);
        if (ms.empty()) return false;
        std::set<NodeId> taken;
        std::vector<const Match*> chosen;
        for (const auto& m : ms) {
            bool clash = false;
            for (NodeId n : m.image_nodes) clash = clash || taken.count(n);
            if (clash) continue;
            taken.insert(m.image_nodes.begin(), m.image_nodes.end());
            chosen.push_back(&m);
        }
        bool any = false;
        for (const Match* m : chosen) {
            if (verify_match(r, g, m->morphism)) continue;
            step(r, g, *m);
            any = true;
        }
        return any;
    }

    const std::map<std::string, Rule>& rules_;
    std::mt19937_64 rng_;
    long budget_;
    Derivation& d_;
};

} // namespace

Strategy parse_strategy(std::string_view text) { return Parser(text).parse(); }

std::set<std::string> rules_used(const Strategy& s) {
    std::set<std::string> out;
    if (s.kind == Strategy::Kind::One || s.kind == Strategy::Kind::All) out.insert(s.rule);
    for (const auto& c : s.children) out.merge(rules_used(c));
    return out;
}

Derivation run(const Strategy& s, const std::map<std::string, Rule>& rules, const AhpGraph& g,
               const RunOptions& options) {
    if (options.budget <= 0) throw StrategyError("budget must be positive");
    for (const auto& name : rules_used(s))
        if (!rules.count(name)) throw StrategyError("strategy uses unknown rule '" + name + "'");
    Derivation d;
    d.initial = g;
    AhpGraph current = g;
    Runner runner(rules, options, d);
    try {
        d.status = runner.exec(s, current) ? RunStatus::Success : RunStatus::Failure;
    } catch (const BudgetExhausted&) {
        d.status = RunStatus::BudgetExhausted;
        current = d.steps.empty() ? g : d.steps.back().after;
    }
    d.final = current;
    return d;
}

} // namespace ahp
