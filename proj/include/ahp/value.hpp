#pragma once

#include <memory>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace ahp {

/// A base attribute value: number (64-bit float), string or boolean.
using Value = std::variant<double, std::string, bool>;

std::string to_string(const Value& v);
const char* type_name(const Value& v);

/// Attribute value expression: a literal, a value variable, or an operator
/// tree over those. Immutable; copies share structure.
class Expr {
public:
    enum class Op { Literal, Var, Neg, Not, Add, Sub, Mul, Div, Eq, Ne, Lt, Le, Gt, Ge, And, Or };

    Expr() : Expr(Value{false}) {}
    Expr(Value v);  // NOLINT: literals convert implicitly
    Expr(double v) : Expr(Value{v}) {}
    Expr(const char* s) : Expr(Value{std::string{s}}) {}
    Expr(std::string s) : Expr(Value{std::move(s)}) {}
    Expr(bool b) : Expr(Value{b}) {}

    static Expr var(std::string name);
    static Expr unary(Op op, Expr operand);
    static Expr binary(Op op, Expr lhs, Expr rhs);

    Op op() const { return node_->op; }
    bool is_literal() const { return op() == Op::Literal; }
    bool is_var() const { return op() == Op::Var; }
    const Value& literal() const;
    const std::string& var_name() const;
    const std::vector<Expr>& operands() const { return node_->operands; }

    /// Names of every value variable occurring in the expression.
    void collect_vars(std::set<std::string>& out) const;
    std::set<std::string> vars() const;

    friend bool operator==(const Expr& a, const Expr& b);

private:
    struct Node {
        Op op;
        Value literal;
        std::string var;
        std::vector<Expr> operands;
    };
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
};

using AttrValue = Expr;

/// Precedence-aware text form; parses back with the document/expression parser.
std::string to_string(const Expr& e);
const char* op_symbol(Expr::Op op);

struct EvalError {
    std::string message;
};

using EvalResult = std::variant<Value, EvalError>;
using ValueEnv = std::map<std::string, Value>;

/// Total evaluator. Unbound variables, type mismatches and division by zero
/// come back as EvalError rather than throwing.
EvalResult evaluate(const Expr& e, const ValueEnv& env);

/// Condition semantics: true only when evaluation yields boolean true.
/// Any error makes the condition false; the reason goes to `diagnostic`.
bool evaluate_condition(const Expr& e, const ValueEnv& env, std::string* diagnostic = nullptr);

} // namespace ahp
