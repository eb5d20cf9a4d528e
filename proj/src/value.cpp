#include "ahp/value.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ahp {

namespace {

std::string format_number(double d) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
    if (ec != std::errc{}) return std::to_string(d);
    return std::string(buf, end);
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        default: out += c;
        }
    }
    return out + "\"";
}

int precedence(Expr::Op op) {
    using Op = Expr::Op;
    switch (op) {
    case Op::Or: return 1;
    case Op::And: return 2;
    case Op::Eq: case Op::Ne: return 3;
    case Op::Lt: case Op::Le: case Op::Gt: case Op::Ge: return 4;
    case Op::Add: case Op::Sub: return 5;
    case Op::Mul: case Op::Div: return 6;
    case Op::Neg: case Op::Not: return 7;
    default: return 8;
    }
}

} // namespace

std::string to_string(const Value& v) {
    if (auto d = std::get_if<double>(&v)) return format_number(*d);
    if (auto s = std::get_if<std::string>(&v)) return quote(*s);
    return std::get<bool>(v) ? "true" : "false";
}

const char* type_name(const Value& v) {
    switch (v.index()) {
    case 0: return "number";
    case 1: return "string";
    default: return "boolean";
    }
}

Expr::Expr(Value v) : node_(std::make_shared<const Node>(Node{Op::Literal, std::move(v), {}, {}})) {}

Expr Expr::var(std::string name) {
    return Expr{std::make_shared<const Node>(Node{Op::Var, Value{false}, std::move(name), {}})};
}

Expr Expr::unary(Op op, Expr operand) {
    if (op != Op::Neg && op != Op::Not) throw std::invalid_argument("not a unary operator");
    return Expr{std::make_shared<const Node>(Node{op, Value{false}, {}, {std::move(operand)}})};
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
    if (op == Op::Literal || op == Op::Var || op == Op::Neg || op == Op::Not)
        throw std::invalid_argument("not a binary operator");
    return Expr{std::make_shared<const Node>(Node{op, Value{false}, {}, {std::move(lhs), std::move(rhs)}})};
}

const Value& Expr::literal() const {
    if (!is_literal()) throw std::logic_error("expression is not a literal");
    return node_->literal;
}

const std::string& Expr::var_name() const {
    if (!is_var()) throw std::logic_error("expression is not a variable");
    return node_->var;
}

void Expr::collect_vars(std::set<std::string>& out) const {
    if (is_var()) out.insert(node_->var);
    for (const auto& o : node_->operands) o.collect_vars(out);
}

std::set<std::string> Expr::vars() const {
    std::set<std::string> out;
    collect_vars(out);
    return out;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.op() != b.op()) return false;
    switch (a.op()) {
    case Expr::Op::Literal: return a.node_->literal == b.node_->literal;
    case Expr::Op::Var: return a.node_->var == b.node_->var;
    default: return a.node_->operands == b.node_->operands;
    }
}

const char* op_symbol(Expr::Op op) {
    using Op = Expr::Op;
    switch (op) {
    case Op::Neg: return "-";
    case Op::Not: return "!";
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "&&";
    case Op::Or: return "||";
    default: return "?";
    }
}

std::string to_string(const Expr& e) {
    using Op = Expr::Op;
    switch (e.op()) {
    case Op::Literal: return to_string(e.literal());
    case Op::Var: return e.var_name();
    case Op::Neg:
    case Op::Not: {
        const auto& x = e.operands()[0];
        auto inner = to_string(x);
        // -(3) stays a negation; -3 reads back as a literal.
        if (precedence(x.op()) < precedence(e.op()) || (x.is_literal() && std::holds_alternative<double>(x.literal())))
            inner = "(" + inner + ")";
        return std::string(op_symbol(e.op())) + inner;
    }
    default: {
        const auto& l = e.operands()[0];
        const auto& r = e.operands()[1];
        auto ls = to_string(l);
        auto rs = to_string(r);
        // Left-associative: a right operand of equal precedence needs parens.
        if (precedence(l.op()) < precedence(e.op())) ls = "(" + ls + ")";
        if (precedence(r.op()) <= precedence(e.op())) rs = "(" + rs + ")";
        return ls + " " + op_symbol(e.op()) + " " + rs;
    }
    }
}

EvalResult evaluate(const Expr& e, const ValueEnv& env) {
    using Op = Expr::Op;
    switch (e.op()) {
    case Op::Literal: return e.literal();
    case Op::Var: {
        auto it = env.find(e.var_name());
        if (it == env.end()) return EvalError{"unbound variable '" + e.var_name() + "'"};
        return it->second;
    }
    default: break;
    }

    std::vector<Value> args;
    for (const auto& o : e.operands()) {
        auto r = evaluate(o, env);
        if (auto err = std::get_if<EvalError>(&r)) return *err;
        args.push_back(std::get<Value>(std::move(r)));
    }

    auto mismatch = [&](const char* want) {
        std::string msg = std::string("operator ") + op_symbol(e.op()) + " expects " + want + ", got ";
        for (std::size_t i = 0; i < args.size(); ++i) msg += (i ? ", " : "") + std::string(type_name(args[i]));
        return EvalError{msg};
    };

    switch (e.op()) {
    case Op::Neg:
        if (auto d = std::get_if<double>(&args[0])) return Value{-*d};
        return mismatch("number");
    case Op::Not:
        if (auto b = std::get_if<bool>(&args[0])) return Value{!*b};
        return mismatch("boolean");
    case Op::And:
    case Op::Or: {
        auto a = std::get_if<bool>(&args[0]);
        auto b = std::get_if<bool>(&args[1]);
        if (!a || !b) return mismatch("booleans");
        return Value{e.op() == Op::And ? (*a && *b) : (*a || *b)};
    }
    case Op::Eq: return Value{args[0] == args[1]};
    case Op::Ne: return Value{args[0] != args[1]};
    case Op::Add:
        if (std::holds_alternative<std::string>(args[0]) && std::holds_alternative<std::string>(args[1]))
            return Value{std::get<std::string>(args[0]) + std::get<std::string>(args[1])};
        [[fallthrough]];
    case Op::Sub:
    case Op::Mul:
    case Op::Div: {
        auto a = std::get_if<double>(&args[0]);
        auto b = std::get_if<double>(&args[1]);
        if (!a || !b) return mismatch("numbers");
        switch (e.op()) {
        case Op::Add: return Value{*a + *b};
        case Op::Sub: return Value{*a - *b};
        case Op::Mul: return Value{*a * *b};
        default:
            if (*b == 0.0) return EvalError{"division by zero"};
            return Value{*a / *b};
        }
    }
    case Op::Lt:
    case Op::Le:
    case Op::Gt:
    case Op::Ge: {
        if (args[0].index() != args[1].index() || std::holds_alternative<bool>(args[0]))
            return mismatch("two numbers or two strings");
        auto cmp = args[0] <=> args[1];
        switch (e.op()) {
        case Op::Lt: return Value{cmp < 0};
        case Op::Le: return Value{cmp <= 0};
        case Op::Gt: return Value{cmp > 0};
        default: return Value{cmp >= 0};
        }
    }
    default: return EvalError{"malformed expression"};
    }
}

bool evaluate_condition(const Expr& e, const ValueEnv& env, std::string* diagnostic) {
    auto r = evaluate(e, env);
    if (auto err = std::get_if<EvalError>(&r)) {
        if (diagnostic) *diagnostic = err->message;
        return false;
    }
    auto b = std::get_if<bool>(&std::get<Value>(r));
    if (!b) {
        if (diagnostic) *diagnostic = std::string("condition evaluated to a ") + type_name(std::get<Value>(r));
        return false;
    }
    return *b;
}

} // namespace ahp
