#include "ahp/io/document.hpp"

#include <cctype>
#include <charconv>
#include <memory>
#include <sstream>

namespace ahp {

const AhpGraph* Document::graph(const std::string& name) const {
    for (const auto& [n, g] : graphs)
        if (n == name) return &g;
    return nullptr;
}

const Rule* Document::rule(const std::string& name) const {
    for (const auto& r : rules)
        if (r.name == name) return &r;
    return nullptr;
}

const Strategy* Document::strategy(const std::string& name) const {
    for (const auto& [n, s] : strategies)
        if (n == name) return &s;
    return nullptr;
}

std::map<std::string, Rule> Document::rule_map() const {
    std::map<std::string, Rule> out;
    for (const auto& r : rules) out.emplace(r.name, r);
    return out;
}

namespace {

// ---------------------------------------------------------------- lexing

struct Pos {
    int line = 1;
    int col = 1;
};

struct Token {
    enum Kind { Ident, Number, String, Punct, End } kind = End;
    std::string text;
    double number = 0;
    Pos pos;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    Token next() {
        skip();
        Token t;
        t.pos = here();
        if (pos_ >= src_.size()) return t;
        char c = src_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                advance();
            t.kind = Token::Ident;
            t.text = std::string(src_.substr(start, pos_ - start));
            return t;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return number(t);
        if (c == '"') return string(t);
        static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||"};
        for (const char* op : two) {
            if (src_.substr(pos_, 2) == op) {
                advance();
                advance();
                t.kind = Token::Punct;
                t.text = op;
                return t;
            }
        }
        if (std::string_view("{}[](),;:.@=+-*/<>!").find(c) != std::string_view::npos) {
            advance();
            t.kind = Token::Punct;
            t.text = std::string(1, c);
            return t;
        }
        throw ParseError(t.pos.line, t.pos.col, std::string("unexpected character '") + c + "'");
    }

    // Raw text up to (not including) `stop`, which is consumed.
    std::pair<std::string, Pos> raw_until(char stop) {
        Pos start = here();
        std::size_t begin = pos_;
        while (pos_ < src_.size() && src_[pos_] != stop) advance();
        if (pos_ >= src_.size()) throw ParseError(start.line, start.col, std::string("missing '") + stop + "'");
        std::string text(src_.substr(begin, pos_ - begin));
        advance();
        return {text, start};
    }

    Pos here() const { return {line_, col_}; }

private:
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    void skip() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else if (c == '#' || src_.substr(pos_, 2) == "//") {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else {
                break;
            }
        }
    }

    Token number(Token& t) {
        std::size_t start = pos_;
        auto digits = [&] {
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) advance();
        };
        digits();
        if (pos_ < src_.size() && src_[pos_] == '.') {
            advance();
            digits();
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            advance();
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) advance();
            digits();
        }
        t.kind = Token::Number;
        t.text = std::string(src_.substr(start, pos_ - start));
        auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), t.number);
        if (ec != std::errc{} || p != t.text.data() + t.text.size())
            throw ParseError(t.pos.line, t.pos.col, "malformed number '" + t.text + "'");
        return t;
    }

    Token string(Token& t) {
        advance();
        std::string out;
        for (;;) {
            if (pos_ >= src_.size() || src_[pos_] == '\n')
                throw ParseError(t.pos.line, t.pos.col, "unterminated string");
            char c = src_[pos_];
            advance();
            if (c == '"') break;
            if (c == '\\') {
                if (pos_ >= src_.size()) throw ParseError(t.pos.line, t.pos.col, "unterminated string");
                char e = src_[pos_];
                advance();
                switch (e) {
                case 'n': out += '\n'; break;
                case 't': out += '\t'; break;
                case '"': out += '"'; break;
                case '\\': out += '\\'; break;
                default: throw ParseError(t.pos.line, t.pos.col, std::string("unknown escape \\") + e);
                }
            } else {
                out += c;
            }
        }
        t.kind = Token::String;
        t.text = out;
        return t;
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

// ---------------------------------------------------------- declarations

struct PortDecl {
    std::string name;
    std::optional<std::uint64_t> id;
    Record record;
    Pos pos;
};

struct BodyDecl;

struct NodeDecl {
    std::string handle;
    std::optional<std::uint64_t> id;
    Record record;
    std::vector<PortDecl> ports;
    std::shared_ptr<BodyDecl> ladder;  // concrete ladder
    std::string ladder_var;            // graph variable ladder
    Pos pos;
    Pos ladder_pos;
};

struct PortRef {
    std::string handle;
    std::string port;
    Pos pos;
};

struct EdgeDecl {
    std::optional<std::uint64_t> id;
    PortRef from, to;
    bool oriented = false;
    Record record;
    Pos pos;
};

struct BodyDecl {
    std::vector<NodeDecl> nodes;
    std::vector<EdgeDecl> edges;
};

struct ArrowDecl {
    ArrowKind kind;
    std::vector<PortRef> left;
    std::vector<PortRef> right;
};

struct RuleDecl {
    std::string name;
    BodyDecl lhs, rhs;
    std::vector<ArrowDecl> arrow;
    Expr condition{true};
    Pos pos;
};

struct StrategyDecl {
    std::string name;
    Strategy strategy;
    Pos pos;
};

[[noreturn]] void fail_at(Pos p, const std::string& msg) { throw ParseError(p.line, p.col, msg); }

// ---------------------------------------------------------------- parser

class Parser {
public:
    explicit Parser(std::string_view text) : lex_(text) {}

    Signature signature;
    bool has_signature = false;
    std::vector<std::pair<std::string, BodyDecl>> graphs;
    std::vector<Pos> graph_pos;
    std::vector<RuleDecl> rules;
    std::vector<StrategyDecl> strategies;

    void document() {
        while (peek().kind != Token::End) {
            Token t = next();
            if (t.kind != Token::Ident) fail_at(t.pos, "expected 'signature', 'graph', 'rule' or 'strategy'");
            if (t.text == "signature") {
                if (has_signature) fail_at(t.pos, "second signature block");
                has_signature = true;
                signature_block();
            } else if (t.text == "graph") {
                auto name = ident("graph name");
                expect("{");
                graphs.emplace_back(name, body());
                graph_pos.push_back(t.pos);
                expect("}");
            } else if (t.text == "rule") {
                rule(t.pos);
            } else if (t.text == "strategy") {
                strategy(t.pos);
            } else {
                fail_at(t.pos, "unknown item '" + t.text + "'");
            }
        }
    }

    Expr expression() { return or_expr(); }

    void expect_end() {
        if (peek().kind != Token::End) fail_at(peek().pos, "unexpected '" + peek().text + "'");
    }

private:
    const Token& peek() {
        if (!la_) la_ = lex_.next();
        return *la_;
    }

    Token next() {
        if (la_) {
            Token t = std::move(*la_);
            la_.reset();
            return t;
        }
        return lex_.next();
    }

    bool is(const char* punct) { return peek().kind == Token::Punct && peek().text == punct; }
    bool is_word(const char* w) { return peek().kind == Token::Ident && peek().text == w; }

    bool accept(const char* punct) {
        if (!is(punct)) return false;
        next();
        return true;
    }

    void expect(const char* punct) {
        if (!accept(punct)) fail_at(peek().pos, std::string("expected '") + punct + "'" + found());
    }

    void expect_word(const char* w) {
        if (!is_word(w)) fail_at(peek().pos, std::string("expected '") + w + "'" + found());
        next();
    }

    std::string found() {
        const auto& t = peek();
        if (t.kind == Token::End) return " but reached the end";
        return " but found '" + t.text + "'";
    }

    std::string ident(const char* what) {
        if (peek().kind != Token::Ident) fail_at(peek().pos, std::string("expected ") + what + found());
        return next().text;
    }

    std::string name_token(const char* what) {
        if (peek().kind == Token::String) return next().text;
        return ident(what);
    }

    std::optional<std::uint64_t> id_suffix() {
        if (!accept("@")) return std::nullopt;
        const Token& t = peek();
        if (t.kind != Token::Number || t.text.find_first_not_of("0123456789") != std::string::npos || t.number < 1)
            fail_at(t.pos, "expected a positive integer id after '@'");
        return std::stoull(next().text);
    }

    void name_list(std::set<std::string>& out) {
        do out.insert(ident("name"));
        while (accept(","));
        expect(";");
    }

    void signature_block() {
        expect("{");
        while (!accept("}")) {
            Token t = next();
            if (t.kind != Token::Ident) fail_at(t.pos, "expected a signature section");
            if (t.text == "attributes") {
                name_list(signature.attributes);
            } else if (t.text == "attribute_vars") {
                name_list(signature.attribute_vars);
            } else if (t.text == "value_vars") {
                name_list(signature.value_vars);
            } else if (t.text == "graph_vars") {
                do {
                    Pos p = peek().pos;
                    auto name = ident("graph variable");
                    std::vector<std::string> iface;
                    expect("[");
                    if (!is("]")) {
                        do iface.push_back(name_token("port name"));
                        while (accept(","));
                    }
                    expect("]");
                    if (!signature.graph_vars.emplace(name, iface).second)
                        fail_at(p, "graph variable " + name + " declared twice");
                } while (accept(","));
                expect(";");
            } else {
                fail_at(t.pos, "unknown signature section '" + t.text + "'");
            }
        }
    }

    Record record() {
        Record r;
        expect("{");
        if (accept("}")) return r;
        do {
            Pos p = peek().pos;
            auto key = name_token("attribute name");
            expect(":");
            if (r.contains(key)) fail_at(p, "attribute " + key + " given twice");
            r.set(key, expression());
        } while (accept(","));
        expect("}");
        return r;
    }

    PortRef port_ref() {
        PortRef ref;
        ref.pos = peek().pos;
        ref.handle = ident("node handle");
        expect(".");
        ref.port = name_token("port name");
        return ref;
    }

    BodyDecl body() {
        BodyDecl b;
        while (!is("}")) {
            Token t = next();
            if (t.kind == Token::Ident && t.text == "node") {
                b.nodes.push_back(node(t.pos));
            } else if (t.kind == Token::Ident && t.text == "edge") {
                b.edges.push_back(edge(t.pos));
            } else {
                fail_at(t.pos, "expected 'node' or 'edge'" + (t.kind == Token::End ? std::string{} : ", found '" + t.text + "'"));
            }
        }
        return b;
    }

    NodeDecl node(Pos pos) {
        NodeDecl n;
        n.pos = pos;
        n.handle = ident("node handle");
        n.id = id_suffix();
        if (is("{")) n.record = record();
        if (accept("[")) {
            if (!is("]")) {
                do {
                    PortDecl p;
                    p.pos = peek().pos;
                    p.name = name_token("port name");
                    p.id = id_suffix();
                    if (is("{")) p.record = record();
                    if (p.record.contains(kName)) fail_at(p.pos, "a port's Name is given by its label");
                    p.record.set(kName, Expr{p.name});
                    n.ports.push_back(std::move(p));
                } while (accept(","));
            }
            expect("]");
        }
        if (is_word("ladder")) {
            n.ladder_pos = next().pos;
            if (accept("{")) {
                n.ladder = std::make_shared<BodyDecl>(body());
                expect("}");
            } else {
                n.ladder_var = ident("graph variable or '{'");
            }
        }
        expect(";");
        return n;
    }

    EdgeDecl edge(Pos pos) {
        EdgeDecl e;
        e.pos = pos;
        e.id = id_suffix();
        e.from = port_ref();
        Pos dash = peek().pos;
        expect("-");
        if (accept(">")) {
            e.oriented = true;
        } else if (!accept("-")) {
            fail_at(dash, "expected '--' or '->'");
        }
        e.to = port_ref();
        if (is("{")) e.record = record();
        if (e.oriented) {
            if (e.record.contains(kOriented)) fail_at(pos, "'->' already sets Oriented");
            e.record.set(kOriented, Expr{true});
        }
        expect(";");
        return e;
    }

    void rule(Pos pos) {
        RuleDecl r;
        r.pos = pos;
        r.name = ident("rule name");
        expect("{");
        expect_word("lhs");
        expect("{");
        r.lhs = body();
        expect("}");
        expect_word("rhs");
        expect("{");
        r.rhs = body();
        expect("}");
        if (is_word("arrow")) {
            next();
            expect("{");
            while (!accept("}")) {
                Token t = next();
                ArrowDecl a;
                if (t.kind == Token::Ident && t.text == "bridge") {
                    a.kind = ArrowKind::Bridge;
                    a.left.push_back(port_ref());
                    expect("-");
                    expect(">");
                    do a.right.push_back(port_ref());
                    while (accept(","));
                } else if (t.kind == Token::Ident && t.text == "wire") {
                    a.kind = ArrowKind::Wire;
                    a.left.push_back(port_ref());
                    expect("-");
                    expect("-");
                    a.left.push_back(port_ref());
                } else if (t.kind == Token::Ident && t.text == "blackhole") {
                    a.kind = ArrowKind::Blackhole;
                    do a.left.push_back(port_ref());
                    while (accept(","));
                } else {
                    fail_at(t.pos, "expected 'bridge', 'wire' or 'blackhole'");
                }
                expect(";");
                r.arrow.push_back(std::move(a));
            }
        }
        if (is_word("when")) {
            next();
            r.condition = expression();
            expect(";");
        }
        expect("}");
        rules.push_back(std::move(r));
    }

    void strategy(Pos pos) {
        StrategyDecl s;
        s.pos = pos;
        s.name = ident("strategy name");
        if (la_) fail_at(peek().pos, "expected '{'");
        Token open = lex_.next();
        if (open.kind != Token::Punct || open.text != "{") fail_at(open.pos, "expected '{'");
        auto [text, start] = lex_.raw_until('}');
        try {
            s.strategy = parse_strategy(text);
        } catch (const StrategyParseError& e) {
            // Map the column inside the raw text back to the document.
            Pos p = start;
            for (int i = 0; i + 1 < e.column && i < static_cast<int>(text.size()); ++i) {
                if (text[i] == '\n') {
                    ++p.line;
                    p.col = 1;
                } else {
                    ++p.col;
                }
            }
            std::string msg = e.what();
            fail_at(p, "in strategy " + s.name + ": " + msg.substr(msg.find(": ") + 2));
        }
        strategies.push_back(std::move(s));
    }

    // ----------------------------------------------------------- expressions

    Expr or_expr() {
        Expr l = and_expr();
        while (accept("||")) l = Expr::binary(Expr::Op::Or, l, and_expr());
        return l;
    }

    Expr and_expr() {
        Expr l = equality();
        while (accept("&&")) l = Expr::binary(Expr::Op::And, l, equality());
        return l;
    }

    Expr equality() {
        Expr l = relational();
        for (;;) {
            if (accept("==")) l = Expr::binary(Expr::Op::Eq, l, relational());
            else if (accept("!=")) l = Expr::binary(Expr::Op::Ne, l, relational());
            else return l;
        }
    }

    Expr relational() {
        Expr l = additive();
        for (;;) {
            if (accept("<=")) l = Expr::binary(Expr::Op::Le, l, additive());
            else if (accept(">=")) l = Expr::binary(Expr::Op::Ge, l, additive());
            else if (accept("<")) l = Expr::binary(Expr::Op::Lt, l, additive());
            else if (accept(">")) l = Expr::binary(Expr::Op::Gt, l, additive());
            else return l;
        }
    }

    Expr additive() {
        Expr l = multiplicative();
        for (;;) {
            if (accept("+")) l = Expr::binary(Expr::Op::Add, l, multiplicative());
            else if (accept("-")) l = Expr::binary(Expr::Op::Sub, l, multiplicative());
            else return l;
        }
    }

    Expr multiplicative() {
        Expr l = unary();
        for (;;) {
            if (accept("*")) l = Expr::binary(Expr::Op::Mul, l, unary());
            else if (accept("/")) l = Expr::binary(Expr::Op::Div, l, unary());
            else return l;
        }
    }

    Expr unary() {
        if (accept("-")) {
            if (peek().kind == Token::Number) return Expr{-next().number};
            return Expr::unary(Expr::Op::Neg, unary());
        }
        if (accept("!")) return Expr::unary(Expr::Op::Not, unary());
        return primary();
    }

    Expr primary() {
        Token t = next();
        switch (t.kind) {
        case Token::Number: return Expr{t.number};
        case Token::String: return Expr{t.text};
        case Token::Ident:
            if (t.text == "true") return Expr{true};
            if (t.text == "false") return Expr{false};
            return Expr::var(t.text);
        case Token::Punct:
            if (t.text == "(") {
                Expr e = expression();
                expect(")");
                return e;
            }
            break;
        default: break;
        }
        fail_at(t.pos, "expected a value" + (t.kind == Token::End ? std::string{} : ", found '" + t.text + "'"));
    }

    Lexer lex_;
    std::optional<Token> la_;
};

// ------------------------------------------------------- materialization

class Builder {
public:
    explicit Builder(const Signature& sig) : sig_(sig) {}

    void claim(std::optional<std::uint64_t> id, Pos p) {
        if (!id) return;
        if (!explicit_.insert(*id).second) fail_at(p, "id " + std::to_string(*id) + " used twice");
        next_ = std::max(next_, *id);
    }

    void claim_all(const BodyDecl& b) {
        for (const auto& n : b.nodes) {
            claim(n.id, n.pos);
            for (const auto& p : n.ports) claim(p.id, p.pos);
            if (n.ladder) claim_all(*n.ladder);
        }
        for (const auto& e : b.edges) claim(e.id, e.pos);
    }

    void assign_all(BodyDecl& b) {
        for (auto& n : b.nodes) {
            if (!n.id) n.id = ++next_;
            for (auto& p : n.ports)
                if (!p.id) p.id = ++next_;
            if (n.ladder) assign_all(*n.ladder);
        }
        for (auto& e : b.edges)
            if (!e.id) e.id = ++next_;
    }

    AhpGraph build(const BodyDecl& b, std::map<std::string, const NodeDecl*>* handles_out = nullptr) {
        std::map<std::string, const NodeDecl*> handles;
        AhpGraph g;
        for (const auto& n : b.nodes) {
            if (!handles.emplace(n.handle, &n).second) fail_at(n.pos, "node handle " + n.handle + " used twice");
            g.top.add_node(NodeId{*n.id}, n.record);
            for (const auto& p : n.ports) g.top.add_port(PortId{*p.id}, NodeId{*n.id}, p.record);
            if (n.ladder) {
                g.set_ladder(NodeId{*n.id}, build(*n.ladder));
            } else if (!n.ladder_var.empty()) {
                auto it = sig_.graph_vars.find(n.ladder_var);
                if (it == sig_.graph_vars.end())
                    fail_at(n.ladder_pos, "undeclared graph variable " + n.ladder_var);
                g.set_ladder(NodeId{*n.id}, GraphVar{n.ladder_var, it->second});
            }
        }
        for (const auto& e : b.edges)
            g.top.add_edge(EdgeId{*e.id}, resolve(handles, e.from), resolve(handles, e.to), e.record);
        if (handles_out) *handles_out = handles;
        return g;
    }

    static PortId resolve(const std::map<std::string, const NodeDecl*>& handles, const PortRef& ref) {
        auto it = handles.find(ref.handle);
        if (it == handles.end()) fail_at(ref.pos, "unknown node handle " + ref.handle);
        const PortDecl* found = nullptr;
        for (const auto& p : it->second->ports) {
            if (p.name != ref.port) continue;
            if (found) fail_at(ref.pos, "node " + ref.handle + " has several ports named " + ref.port);
            found = &p;
        }
        if (!found) fail_at(ref.pos, "node " + ref.handle + " has no port " + ref.port);
        return PortId{*found->id};
    }

private:
    const Signature& sig_;
    std::set<std::uint64_t> explicit_;
    std::uint64_t next_ = 0;
};

// ------------------------------------------------------------- emission

bool is_identifier(const std::string& s) {
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    static const std::set<std::string> reserved{"true", "false"};
    return !reserved.count(s);
}

std::string label(const std::string& s) { return is_identifier(s) ? s : to_string(Value{s}); }

std::string emit_record(const Record& r) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : r.pairs()) {
        out += (first ? "" : ", ") + label(k) + ": " + to_string(v);
        first = false;
    }
    return out + "}";
}

class Emitter {
public:
    explicit Emitter(std::ostringstream& os) : os_(os) {}

    void body(const AhpGraph& g, int indent) {
        const std::string pad(indent, ' ');
        for (const auto& [nid, n] : g.top.nodes()) {
            os_ << pad << "node " << to_string(nid) << "@" << nid.value;
            if (!n.record.empty()) os_ << " " << emit_record(n.record);
            if (!n.ports.empty()) {
                os_ << " [";
                for (std::size_t i = 0; i < n.ports.size(); ++i) {
                    const auto& pr = g.top.port(n.ports[i]).record;
                    os_ << (i ? ", " : "") << label(pr.concrete_name().value_or("")) << "@" << n.ports[i].value;
                    Record rest = pr;
                    rest.erase(kName);
                    if (!rest.empty()) os_ << " " << emit_record(rest);
                }
                os_ << "]";
            }
            if (const Ladder* l = g.ladder(nid)) {
                if (auto v = std::get_if<GraphVar>(l)) {
                    os_ << " ladder " << v->name;
                } else {
                    os_ << " ladder {\n";
                    body(*std::get<LadderGraph>(*l), indent + 2);
                    os_ << pad << "}";
                }
            }
            os_ << ";\n";
        }
        for (const auto& [eid, e] : g.top.edges()) {
            Record rec = e.record;
            bool arrow = e.oriented();
            if (arrow) rec.erase(kOriented);
            os_ << pad << "edge@" << eid.value << " " << ref(g.top, e.source) << (arrow ? " -> " : " -- ")
                << ref(g.top, e.target);
            if (!rec.empty()) os_ << " " << emit_record(rec);
            os_ << ";\n";
        }
    }

    static std::string ref(const PortGraph& g, PortId p) {
        const auto& pd = g.port(p);
        return to_string(pd.node) + "." + label(pd.record.concrete_name().value_or(""));
    }

private:
    std::ostringstream& os_;
};

void emit_names(std::ostringstream& os, const char* head, const std::set<std::string>& names) {
    if (names.empty()) return;
    os << "  " << head;
    bool first = true;
    for (const auto& n : names) {
        os << (first ? " " : ", ") << n;
        first = false;
    }
    os << ";\n";
}

// Port reference for a top-level port of a rule side.
std::string side_ref(const AhpGraph& side, PortId p) {
    if (!side.top.has(p)) return "?" + to_string(p);
    return Emitter::ref(side.top, p);
}

} // namespace

Document parse_document(std::string_view text) {
    Parser parser(text);
    parser.document();
    Document doc;
    doc.signature = parser.signature;

    std::set<std::string> names;
    for (std::size_t i = 0; i < parser.graphs.size(); ++i) {
        auto& [name, body] = parser.graphs[i];
        if (!names.insert("graph " + name).second) fail_at(parser.graph_pos[i], "graph " + name + " defined twice");
        Builder b(doc.signature);
        b.claim_all(body);
        b.assign_all(body);
        doc.graphs.emplace_back(name, b.build(body));
    }
    for (auto& rd : parser.rules) {
        if (!names.insert("rule " + rd.name).second) fail_at(rd.pos, "rule " + rd.name + " defined twice");
        Builder b(doc.signature);
        b.claim_all(rd.lhs);
        b.claim_all(rd.rhs);
        b.assign_all(rd.lhs);
        b.assign_all(rd.rhs);
        Rule r;
        r.name = rd.name;
        std::map<std::string, const NodeDecl*> lh, rh;
        r.lhs = b.build(rd.lhs, &lh);
        r.rhs = b.build(rd.rhs, &rh);
        for (const auto& a : rd.arrow) {
            ArrowPort ap;
            ap.kind = a.kind;
            for (const auto& ref : a.left) ap.lhs_ports.push_back(Builder::resolve(lh, ref));
            for (const auto& ref : a.right) ap.rhs_ports.push_back(Builder::resolve(rh, ref));
            r.arrow.push_back(std::move(ap));
        }
        r.condition = rd.condition;
        r.attribute_vars = doc.signature.attribute_vars;
        doc.rules.push_back(std::move(r));
    }
    for (auto& sd : parser.strategies) {
        if (!names.insert("strategy " + sd.name).second) fail_at(sd.pos, "strategy " + sd.name + " defined twice");
        for (const auto& used : rules_used(sd.strategy))
            if (!doc.rule(used)) fail_at(sd.pos, "strategy " + sd.name + " refers to undeclared rule '" + used + "'");
        doc.strategies.emplace_back(sd.name, sd.strategy);
    }
    return doc;
}

Expr parse_expression(std::string_view text) {
    Parser p(text);
    Expr e = p.expression();
    p.expect_end();
    return e;
}

std::string emit_document(const Document& doc) {
    std::ostringstream os;
    const auto& sig = doc.signature;
    os << "signature {\n";
    emit_names(os, "attributes", sig.attributes);
    emit_names(os, "attribute_vars", sig.attribute_vars);
    emit_names(os, "value_vars", sig.value_vars);
    if (!sig.graph_vars.empty()) {
        os << "  graph_vars";
        bool first = true;
        for (const auto& [name, iface] : sig.graph_vars) {
            os << (first ? " " : ", ") << name << "[";
            for (std::size_t i = 0; i < iface.size(); ++i) os << (i ? ", " : "") << label(iface[i]);
            os << "]";
            first = false;
        }
        os << ";\n";
    }
    os << "}\n";
    Emitter em(os);
    for (const auto& [name, g] : doc.graphs) {
        os << "\ngraph " << name << " {\n";
        em.body(g, 2);
        os << "}\n";
    }
    for (const auto& r : doc.rules) {
        os << "\nrule " << r.name << " {\n  lhs {\n";
        em.body(r.lhs, 4);
        os << "  }\n  rhs {\n";
        em.body(r.rhs, 4);
        os << "  }\n";
        if (!r.arrow.empty()) {
            os << "  arrow {\n";
            for (const auto& a : r.arrow) {
                os << "    " << to_string(a.kind) << " ";
                std::vector<std::string> left;
                for (PortId p : a.lhs_ports) left.push_back(side_ref(r.lhs, p));
                std::vector<std::string> right;
                for (PortId p : a.rhs_ports) right.push_back(side_ref(r.rhs, p));
                auto join = [](const std::vector<std::string>& xs) {
                    std::string s;
                    for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? ", " : "") + xs[i];
                    return s;
                };
                if (a.kind == ArrowKind::Bridge) os << join(left) << " -> " << join(right);
                else if (a.kind == ArrowKind::Wire && left.size() == 2) os << left[0] << " -- " << left[1];
                else os << join(left);
                os << ";\n";
            }
            os << "  }\n";
        }
        if (!(r.condition == Expr{true})) os << "  when " << to_string(r.condition) << ";\n";
        os << "}\n";
    }
    for (const auto& [name, s] : doc.strategies) os << "\nstrategy " << name << " { " << to_string(s) << " }\n";
    return os.str();
}

std::vector<Violation> validate_document(const Document& doc) {
    std::vector<Violation> out = validate_signature(doc.signature);
    for (const auto& [name, g] : doc.graphs)
        for (auto v : validate_ahp(g, doc.signature, false)) {
            v.message = "graph " + name + ": " + v.message;
            out.push_back(std::move(v));
        }
    for (const auto& r : doc.rules) {
        auto vs = validate_rule(r, doc.signature);
        out.insert(out.end(), vs.begin(), vs.end());
    }
    return out;
}

} // namespace ahp
