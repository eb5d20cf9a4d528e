#pragma once

#include <set>
#include <string>
#include <vector>

#include "ahp/ahp_graph.hpp"

namespace ahp {

enum class ArrowKind { Bridge, Wire, Blackhole };

const char* to_string(ArrowKind k);

/// One port of the arrow node. Each entry of lhs_ports / rhs_ports stands for
/// one arrow edge into the top level of the left / right-hand side.
struct ArrowPort {
    ArrowKind kind = ArrowKind::Bridge;
    std::vector<PortId> lhs_ports;
    std::vector<PortId> rhs_ports;

    friend bool operator==(const ArrowPort&, const ArrowPort&) = default;
};

/// L =>_C R with its arrow node. `attribute_vars` lists the record keys in
/// lhs/rhs that are attribute variables (taken from the signature).
struct Rule {
    std::string name;
    AhpGraph lhs;
    AhpGraph rhs;
    std::vector<ArrowPort> arrow;
    Expr condition{true};
    std::set<std::string> attribute_vars;

    friend bool operator==(const Rule&, const Rule&) = default;
};

/// The rule as one AHP: lhs, rhs and an arrow node whose typed ports connect
/// to both sides. Arrow elements get ids above both sides. Throws GraphError
/// when lhs and rhs share ids.
AhpGraph rule_as_graph(const Rule& r);

std::vector<Violation> validate_rule(const Rule& r, const Signature& sig);

/// Every bridge has exactly one right-hand edge and there are no wires.
bool is_simple(const Rule& r);

/// Arrow port index for each lhs port it touches.
std::map<PortId, std::size_t> arrow_index(const Rule& r);

struct VariableSet {
    std::set<std::string> values;
    std::set<std::string> attributes;
    std::set<std::string> graphs;
};

/// Variables occurring anywhere in a graph (all depths).
VariableSet variables_of(const AhpGraph& g, const std::set<std::string>& attribute_vars);

} // namespace ahp
