#include "ahp/isomorphism.hpp"

#include <algorithm>

namespace ahp {

namespace {

// Edges between two ports, as a sorted list of (record text, direction).
// Direction is only meaningful for oriented edges: 1 when u is the source.
using EdgeBag = std::vector<std::pair<std::string, int>>;

EdgeBag edges_between(const PortGraph& g, PortId u, PortId v) {
    EdgeBag bag;
    for (EdgeId e : g.port(u).edges) {
        const auto& ed = g.edge(e);
        if (!((ed.source == u && ed.target == v) || (ed.source == v && ed.target == u))) continue;
        int dir = 0;
        if (ed.oriented() && u != v) dir = ed.source == u ? 1 : 2;
        bag.emplace_back(to_string(ed.record), dir);
    }
    std::sort(bag.begin(), bag.end());
    return bag;
}

class Iso {
public:
    Iso(const AhpGraph& a, const AhpGraph& b) : a_(a), b_(b) {}

    bool run() {
        if (a_.top.nodes().size() != b_.top.nodes().size() || a_.top.ports().size() != b_.top.ports().size() ||
            a_.top.edges().size() != b_.top.edges().size() || a_.ladders.size() != b_.ladders.size())
            return false;
        order_ = connectivity_order();
        return extend(0);
    }

private:
    std::vector<NodeId> connectivity_order() const {
        std::vector<NodeId> order;
        std::set<NodeId> placed;
        while (order.size() < a_.top.nodes().size()) {
            NodeId best{};
            int best_links = -1;
            for (const auto& [n, nd] : a_.top.nodes()) {
                if (placed.count(n)) continue;
                int links = 0;
                for (PortId p : nd.ports)
                    for (EdgeId e : a_.top.port(p).edges)
                        if (placed.count(a_.top.port(a_.top.opposite(e, p)).node)) ++links;
                if (links > best_links) best = n, best_links = links;
            }
            order.push_back(best);
            placed.insert(best);
        }
        return order;
    }

    bool ladder_match(NodeId x, NodeId y) const {
        const Ladder* lx = a_.ladder(x);
        const Ladder* ly = b_.ladder(y);
        if (!lx || !ly) return !lx && !ly;
        if (lx->index() != ly->index()) return false;
        if (auto v = std::get_if<GraphVar>(lx)) return *v == std::get<GraphVar>(*ly);
        const auto& gx = std::get<LadderGraph>(*lx);
        const auto& gy = std::get<LadderGraph>(*ly);
        return gx == gy || isomorphic(*gx, *gy);
    }

    bool node_match(NodeId x, NodeId y) const {
        const auto& nx = a_.top.node(x);
        const auto& ny = b_.top.node(y);
        if (!(nx.record == ny.record) || nx.ports.size() != ny.ports.size()) return false;
        for (std::size_t i = 0; i < nx.ports.size(); ++i) {
            const auto& px = a_.top.port(nx.ports[i]);
            const auto& py = b_.top.port(ny.ports[i]);
            if (!(px.record == py.record) || px.edges.size() != py.edges.size()) return false;
        }
        return true;
    }

    bool edges_consistent(NodeId x, NodeId y) const {
        const auto& px = a_.top.node(x).ports;
        const auto& py = b_.top.node(y).ports;
        for (std::size_t i = 0; i < px.size(); ++i) {
            for (const auto& [u, v] : port_map_) {
                if (edges_between(a_.top, px[i], u) != edges_between(b_.top, py[i], v)) return false;
            }
            for (std::size_t j = 0; j <= i; ++j)
                if (edges_between(a_.top, px[i], px[j]) != edges_between(b_.top, py[i], py[j])) return false;
        }
        return true;
    }

    bool extend(std::size_t i) {
        if (i == order_.size()) return true;
        NodeId x = order_[i];
        for (const auto& [y, nd] : b_.top.nodes()) {
            if (used_.count(y) || !node_match(x, y) || !edges_consistent(x, y) || !ladder_match(x, y)) continue;
            used_.insert(y);
            const auto& px = a_.top.node(x).ports;
            for (std::size_t k = 0; k < px.size(); ++k) port_map_.emplace(px[k], nd.ports[k]);
            if (extend(i + 1)) return true;
            for (PortId p : px) port_map_.erase(p);
            used_.erase(y);
        }
        return false;
    }

    const AhpGraph& a_;
    const AhpGraph& b_;
    std::vector<NodeId> order_;
    std::set<NodeId> used_;
    std::map<PortId, PortId> port_map_;
};

} // namespace

bool isomorphic(const AhpGraph& a, const AhpGraph& b) { return Iso(a, b).run(); }

bool isomorphic(const PortGraph& a, const PortGraph& b) { return isomorphic(AhpGraph{a}, AhpGraph{b}); }

} // namespace ahp
