#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ahp/rule.hpp"

namespace ahp {

/// Values bound to the variables of a rule during matching.
struct Bindings {
    std::map<std::string, Value> values;
    std::map<std::string, std::string> attributes;  // attribute variable -> key
    std::map<std::string, LadderGraph> graphs;      // graph variable -> host ladder

    /// Graph bindings compare by ladder identity, falling back to isomorphism.
    friend bool operator==(const Bindings& a, const Bindings& b);
};

/// Element maps from the pattern into the host, across all depths (ids are
/// unique across depths, so one map per element kind suffices).
struct Morphism {
    std::map<NodeId, NodeId> nodes;
    std::map<PortId, PortId> ports;
    std::map<EdgeId, EdgeId> edges;
    Bindings bindings;

    friend bool operator==(const Morphism&, const Morphism&) = default;
};

struct Match {
    Morphism morphism;
    std::set<NodeId> image_nodes;
    std::set<PortId> image_ports;
    std::set<EdgeId> image_edges;

    friend bool operator==(const Match& a, const Match& b) { return a.morphism == b.morphism; }
};

Match make_match(Morphism m);

/// Canonical order: sorted image node ids, then the maps, then bindings.
bool canonical_less(const Match& a, const Match& b);

/// Unifies a pattern record with a host record under existing bindings. One
/// result per way of assigning the attribute-variable keys.
std::vector<Bindings> unify_record(const Record& pattern, const Record& host, const Bindings& env,
                                   const std::set<std::string>& attribute_vars);

/// All matches of r.lhs in the top level of host, canonically ordered and
/// free of duplicates. Condition-evaluation failures are reported through
/// `diagnostics` and reject the candidate.
std::vector<Match> find_matches(const Rule& r, const AhpGraph& host, std::vector<std::string>* diagnostics = nullptr);

/// First way of matching a pattern ladder onto a host ladder under `env`.
/// Graph variables bind (or check) the whole host ladder; concrete ladders
/// must match bijectively.
std::optional<Morphism> match_ladder(const Ladder& pattern, const LadderGraph& host, const Bindings& env,
                                     const std::set<std::string>& attribute_vars = {});

bool eval_condition(const Expr& condition, const Morphism& m, std::string* diagnostic = nullptr);

/// Replays every morphism law, the dangling condition and the rule
/// condition. Returns the first broken law, or nullopt if the match is valid.
std::optional<std::string> verify_match(const Rule& r, const AhpGraph& host, const Morphism& m);

/// Test oracle: enumerates every injective assignment of the pattern's
/// nodes, ports and edges (all depths at once) into the host's, then keeps
/// the assignments verify_match accepts. Throws std::invalid_argument when
/// the host has more than max_size elements.
std::vector<Match> brute_force_matches(const Rule& r, const AhpGraph& host, std::size_t max_size = 12);

/// Index of the components of an AHP: which node's ladder (0 = top level)
/// each element lives in.
struct ComponentIndex {
    explicit ComponentIndex(const AhpGraph& g);

    std::map<NodeId, NodeId> node_owner;
    std::map<PortId, NodeId> port_owner;
    std::map<EdgeId, NodeId> edge_owner;
    std::map<NodeId, const AhpGraph*> component;  // owner -> graph holding its elements

    const PortGraph& graph_of(PortId p) const { return component.at(port_owner.at(p))->top; }
};

} // namespace ahp
