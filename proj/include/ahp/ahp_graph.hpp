#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "ahp/port_graph.hpp"

namespace ahp {

class AhpGraph;

/// Graph variable standing for an unknown ladder graph with a fixed interface.
struct GraphVar {
    std::string name;
    std::vector<std::string> interface;

    friend bool operator==(const GraphVar&, const GraphVar&) = default;
};

/// Ladder graphs are shared immutable values; identity of the pointer is the
/// ladder instance (injectivity is checked on it).
using LadderGraph = std::shared_ptr<const AhpGraph>;
using Ladder = std::variant<LadderGraph, GraphVar>;

/// Attributed hierarchical port graph: a top-level port graph plus a partial
/// map from its nodes to lower-level graphs.
class AhpGraph {
public:
    AhpGraph() = default;
    explicit AhpGraph(PortGraph top) : top(std::move(top)) {}

    PortGraph top;
    std::map<NodeId, Ladder> ladders;

    bool is_flat() const { return ladders.empty(); }
    const Ladder* ladder(NodeId n) const;
    void set_ladder(NodeId n, AhpGraph g) { ladders[n] = std::make_shared<const AhpGraph>(std::move(g)); }
    void set_ladder(NodeId n, GraphVar v) { ladders[n] = std::move(v); }

    /// Deep structural equality (ladder contents, not pointer identity).
    friend bool operator==(const AhpGraph& a, const AhpGraph& b);
};

/// 0 for a flat graph; otherwise one more than the deepest ladder. Graph
/// variables count as level 0.
int level(const AhpGraph& g);

/// Every AhpGraph invariant, recursively at every depth.
std::vector<Violation> validate_ahp(const AhpGraph& g, const Signature& sig, bool allow_vars);

std::uint64_t max_id(const AhpGraph& g);
/// Nodes + ports + edges at all depths.
std::size_t element_count(const AhpGraph& g);
bool has_graph_vars(const AhpGraph& g);

/// Visits the top graph and every concrete ladder graph, depth-first in
/// node-id order. `depth` is 0 for the top.
template <class F>
void for_each_component(const AhpGraph& g, F&& f, int depth = 0) {
    f(g, depth);
    for (const auto& [n, l] : g.ladders)
        if (auto w = std::get_if<LadderGraph>(&l)) for_each_component(**w, f, depth + 1);
}

struct Renumbering {
    std::map<NodeId, NodeId> nodes;
    std::map<PortId, PortId> ports;
    std::map<EdgeId, EdgeId> edges;
};

/// Deep copy with fresh ids from `ids`, preserving structure, order and records.
AhpGraph renumber(const AhpGraph& g, IdAllocator& ids, Renumbering* map = nullptr);

} // namespace ahp
