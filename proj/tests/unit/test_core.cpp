#include <gtest/gtest.h>

#include "ahp/io/document.hpp"
#include "ahp/port_graph.hpp"

using namespace ahp;

namespace {

Signature basic_sig() {
    Signature s;
    s.attributes = {"pay", "val"};
    s.value_vars = {"X", "Y"};
    return s;
}

Record named(const char* n) { return Record::named(std::string{n}); }

std::vector<std::string> codes(const std::vector<Violation>& vs) {
    std::vector<std::string> out;
    for (const auto& v : vs) out.push_back(v.code);
    return out;
}

double number(const EvalResult& r) { return std::get<double>(std::get<Value>(r)); }

} // namespace

TEST(Record, LookupAndKeys) {
    Record r{{kName, Expr{std::string("A")}}, {"pay", Expr{3.0}}};
    EXPECT_EQ(*r.get("pay"), Expr{3.0});
    EXPECT_FALSE(named("A").get("pay"));
    Record v{{kName, Expr{std::string("A")}}, {"pay", Expr::var("X")}};
    ASSERT_TRUE(v.get("pay")->is_var());
    EXPECT_EQ(v.get("pay")->var_name(), "X");
    EXPECT_EQ(atts(r), (std::set<std::string>{"Name", "pay"}));
    EXPECT_EQ(atts(named("A")), (std::set<std::string>{"Name"}));
    EXPECT_EQ(r.concrete_name(), "A");
    EXPECT_TRUE(r.is_concrete());
    EXPECT_FALSE(v.is_concrete());
}

TEST(Record, EqualityIgnoresInsertionOrder) {
    Record a;
    a.set("pay", Expr{1.0}).set(kName, Expr{std::string("A")});
    Record b;
    b.set(kName, Expr{std::string("A")}).set("pay", Expr{1.0});
    EXPECT_EQ(a, b);
    EXPECT_EQ(to_string(a), "{Name: \"A\", pay: 1}");
}

TEST(Expression, Arithmetic) {
    ValueEnv env{{"X", Value{3.0}}, {"Y", Value{2.0}}};
    EXPECT_EQ(number(evaluate(parse_expression("X + 1"), env)), 4.0);
    EXPECT_EQ(number(evaluate(parse_expression("X - Y * 2"), env)), -1.0);
    EXPECT_EQ(number(evaluate(parse_expression("(X - Y) * 2"), env)), 2.0);
    EXPECT_EQ(number(evaluate(parse_expression("X / Y"), env)), 1.5);
    EXPECT_EQ(number(evaluate(parse_expression("-X + 10"), env)), 7.0);
    EXPECT_EQ(std::get<std::string>(std::get<Value>(evaluate(parse_expression("\"a\" + \"b\""), {}))), "ab");
}

TEST(Expression, Comparisons) {
    ValueEnv env{{"X", Value{3.0}}};
    std::string diag;
    EXPECT_TRUE(evaluate_condition(parse_expression("X > 2"), env, &diag));
    EXPECT_FALSE(evaluate_condition(parse_expression("X > 3"), env, &diag));
    EXPECT_TRUE(evaluate_condition(parse_expression("X >= 3 && !(X == 4)"), env, &diag));
    EXPECT_TRUE(evaluate_condition(parse_expression("X < 0 || true"), env, &diag));
    EXPECT_TRUE(evaluate_condition(parse_expression("\"abc\" < \"abd\""), env, &diag));
}

TEST(Expression, Errors) {
    std::string diag;
    EXPECT_FALSE(evaluate_condition(parse_expression("1 / 0 > 0"), {}, &diag));
    EXPECT_EQ(diag, "division by zero");
    EXPECT_FALSE(evaluate_condition(parse_expression("Z > 0"), {}, &diag));
    EXPECT_NE(diag.find("unbound"), std::string::npos);
    EXPECT_FALSE(evaluate_condition(parse_expression("1 + \"a\" > 0"), {}, &diag));
    EXPECT_NE(diag.find("expects"), std::string::npos);
    EXPECT_FALSE(evaluate_condition(parse_expression("1 + 2"), {}, &diag));
    EXPECT_NE(diag.find("number"), std::string::npos);
}

TEST(Expression, PrintingReparses) {
    for (const char* text : {"X + 1", "(X + 1) * 2", "X - (Y - 1)", "-(3)", "-3", "!(X > 1) && Y <= 2",
                             "\"a\\\"b\" == X", "X / (Y * 2)"}) {
        Expr e = parse_expression(text);
        EXPECT_EQ(parse_expression(to_string(e)), e) << text;
    }
    EXPECT_EQ(to_string(parse_expression("(X + 1) * 2")), "(X + 1) * 2");
    EXPECT_EQ(to_string(parse_expression("X - (Y - 1)")), "X - (Y - 1)");
    EXPECT_EQ(to_string(parse_expression("1 - 2 - 3")), "1 - 2 - 3");
    // A negative literal and the negation of a literal stay distinct.
    EXPECT_TRUE(parse_expression("-3").is_literal());
    EXPECT_FALSE(parse_expression("-(3)").is_literal());
}

TEST(Expression, Variables) {
    EXPECT_EQ(parse_expression("X * Y + X").vars(), (std::set<std::string>{"X", "Y"}));
    EXPECT_TRUE(parse_expression("1 + 2").vars().empty());
}

TEST(PortGraph, MinimalNodeIsValid) {
    PortGraph g;
    NodeId n = g.add_node(NodeId{1}, named("A"));
    g.add_port(PortId{2}, n, named("p"));
    g.add_port(PortId{3}, n, named("q"));
    EXPECT_TRUE(validate_port_graph(g, basic_sig(), false).empty());
    EXPECT_EQ(g.node_interface(n), (std::vector<std::string>{"p", "q"}));
}

TEST(PortGraph, InterfaceMismatch) {
    PortGraph g;
    NodeId a = g.add_node(NodeId{1}, named("A"));
    g.add_port(PortId{2}, a, named("p"));
    NodeId b = g.add_node(NodeId{3}, named("A"));
    g.add_port(PortId{4}, b, named("p"));
    g.add_port(PortId{5}, b, named("q"));
    EXPECT_EQ(codes(validate_port_graph(g, basic_sig(), false)), (std::vector<std::string>{"interface-mismatch"}));
}

TEST(PortGraph, MissingName) {
    PortGraph g;
    g.add_node(NodeId{1}, Record{{"pay", Expr{1.0}}});
    EXPECT_EQ(codes(validate_port_graph(g, basic_sig(), false)), (std::vector<std::string>{"missing-name"}));
}

TEST(PortGraph, SameNameNeedsSameKeys) {
    PortGraph g;
    g.add_node(NodeId{1}, named("B"));
    g.add_node(NodeId{2}, Record{{kName, Expr{std::string("B")}}, {"pay", Expr{1.0}}});
    EXPECT_TRUE(has_violation(validate_port_graph(g, basic_sig(), false), "schema-mismatch"));
}

TEST(PortGraph, RecordChecks) {
    PortGraph g;
    g.add_node(NodeId{1}, Record{{kName, Expr{std::string("A")}}, {"size", Expr{1.0}}});
    g.add_node(NodeId{2}, Record{{kName, Expr{std::string("C")}}, {"pay", Expr::var("X")}});
    g.add_node(NodeId{3}, Record{{kName, Expr{std::string("D")}}, {kInterface, Expr{1.0}}});
    g.add_node(NodeId{4}, Record{{kName, Expr{2.0}}});
    auto vs = validate_port_graph(g, basic_sig(), false);
    EXPECT_TRUE(has_violation(vs, "unknown-attribute"));
    EXPECT_TRUE(has_violation(vs, "variable-in-subject"));
    EXPECT_TRUE(has_violation(vs, "reserved-attribute"));
    EXPECT_TRUE(has_violation(vs, "name-type"));
    // Rule sides may hold declared variables.
    PortGraph r;
    r.add_node(NodeId{1}, Record{{kName, Expr{std::string("C")}}, {"pay", Expr::var("X")}});
    EXPECT_TRUE(validate_port_graph(r, basic_sig(), true).empty());
    r.add_node(NodeId{2}, Record{{kName, Expr{std::string("E")}}, {"pay", Expr::var("Q")}});
    EXPECT_TRUE(has_violation(validate_port_graph(r, basic_sig(), true), "undeclared-variable"));
}

TEST(PortGraph, OrientedMustBeBoolean) {
    PortGraph g;
    NodeId n = g.add_node(NodeId{1}, named("A"));
    PortId p = g.add_port(PortId{2}, n, named("p"));
    g.add_edge(EdgeId{3}, p, p, Record{{kName, Expr{std::string("e")}}, {kOriented, Expr{1.0}}});
    EXPECT_TRUE(has_violation(validate_port_graph(g, basic_sig(), false), "oriented-type"));
}

TEST(PortGraph, DuplicatePortNames) {
    PortGraph g;
    NodeId n = g.add_node(NodeId{1}, named("A"));
    g.add_port(PortId{2}, n, named("p"));
    g.add_port(PortId{3}, n, named("p"));
    EXPECT_TRUE(has_violation(validate_port_graph(g, basic_sig(), false), "duplicate-port-name"));
}

TEST(PortGraph, FreePorts) {
    PortGraph g;
    NodeId n = g.add_node(NodeId{1}, named("A"));
    PortId p = g.add_port(PortId{2}, n, named("p"));
    PortId q = g.add_port(PortId{3}, n, named("q"));
    g.add_edge(EdgeId{4}, q, q, named("loop"));
    EXPECT_EQ(interface(g), (std::vector<PortId>{p}));

    PortGraph h;
    NodeId m = h.add_node(NodeId{1}, named("A"));
    for (std::uint64_t i = 2; i <= 4; ++i) h.add_port(PortId{i}, m, named(("p" + std::to_string(i)).c_str()));
    EXPECT_EQ(interface(h).size(), 3u);

    PortId a = h.ports().begin()->first;
    PortId b = std::next(h.ports().begin())->first;
    PortId c = std::prev(h.ports().end())->first;
    h.add_edge(EdgeId{5}, a, b, named("e"));
    h.add_edge(EdgeId{6}, c, c, named("e"));
    EXPECT_TRUE(interface(h).empty());
}

TEST(PortGraph, RemovingANodeRemovesItsEdges) {
    PortGraph g;
    NodeId a = g.add_node(NodeId{1}, named("A"));
    PortId p = g.add_port(PortId{2}, a, named("p"));
    NodeId b = g.add_node(NodeId{3}, named("A"));
    PortId q = g.add_port(PortId{4}, b, named("p"));
    EdgeId e = g.add_edge(EdgeId{5}, p, q, named("e"));
    EXPECT_EQ(g.opposite(e, p), q);
    g.remove_node(a);
    EXPECT_FALSE(g.has(e));
    EXPECT_FALSE(g.has(p));
    EXPECT_TRUE(g.port(q).edges.empty());
    EXPECT_TRUE(validate_port_graph(g, basic_sig(), false).empty());
    EXPECT_EQ(max_id(g), 4u);
}

TEST(PortGraph, RejectsBadMutations) {
    PortGraph g;
    NodeId a = g.add_node(NodeId{1}, named("A"));
    EXPECT_THROW(g.add_node(NodeId{1}, named("A")), GraphError);
    EXPECT_THROW(g.add_port(PortId{2}, NodeId{9}, named("p")), GraphError);
    PortId p = g.add_port(PortId{2}, a, named("p"));
    EXPECT_THROW(g.add_edge(EdgeId{3}, p, PortId{7}, named("e")), GraphError);
}

TEST(Signature, NameSetsMustBeDisjoint) {
    Signature s = basic_sig();
    EXPECT_TRUE(validate_signature(s).empty());
    s.value_vars.insert("pay");
    EXPECT_FALSE(validate_signature(s).empty());
}
