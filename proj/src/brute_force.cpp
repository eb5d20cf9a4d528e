#include <algorithm>
#include <stdexcept>

#include "ahp/match.hpp"

namespace ahp {

namespace {

struct Flat {
    std::vector<NodeId> nodes;
    std::vector<PortId> ports;
    std::vector<EdgeId> edges;
    std::map<NodeId, const AhpGraph*> node_graph;
    std::map<PortId, const AhpGraph*> port_graph;
    std::map<EdgeId, const AhpGraph*> edge_graph;
};

Flat collect(const AhpGraph& g) {
    Flat f;
    for_each_component(g, [&](const AhpGraph& c, int) {
        for (const auto& [id, n] : c.top.nodes()) f.nodes.push_back(id), f.node_graph[id] = &c;
        for (const auto& [id, p] : c.top.ports()) f.ports.push_back(id), f.port_graph[id] = &c;
        for (const auto& [id, e] : c.top.edges()) f.edges.push_back(id), f.edge_graph[id] = &c;
    });
    return f;
}

class Enumerator {
public:
    Enumerator(const Rule& r, const AhpGraph& host, std::vector<Match>& out)
        : r_(r), host_(host), p_(collect(r.lhs)), h_(collect(host)), out_(out) {}

    void run() { nodes(0); }

private:
    void nodes(std::size_t i) {
        if (i == p_.nodes.size()) return ports(0);
        for (NodeId h : h_.nodes) {
            if (used_nodes_.count(h)) continue;
            m_.nodes[p_.nodes[i]] = h;
            used_nodes_.insert(h);
            nodes(i + 1);
            used_nodes_.erase(h);
        }
        m_.nodes.erase(p_.nodes[i]);
    }

    // Only ports attached to the image of the pattern port's node are
    // candidates; any other choice breaks attachment preservation.
    void ports(std::size_t i) {
        if (i == p_.ports.size()) return edges(0);
        PortId pp = p_.ports[i];
        NodeId owner = m_.nodes.at(p_.port_graph.at(pp)->top.port(pp).node);
        for (PortId h : h_.ports) {
            if (used_ports_.count(h) || h_.port_graph.at(h)->top.port(h).node != owner) continue;
            m_.ports[pp] = h;
            used_ports_.insert(h);
            ports(i + 1);
            used_ports_.erase(h);
        }
        m_.ports.erase(pp);
    }

    void edges(std::size_t i) {
        if (i == p_.edges.size()) return bind();
        for (EdgeId h : h_.edges) {
            if (used_edges_.count(h)) continue;
            m_.edges[p_.edges[i]] = h;
            used_edges_.insert(h);
            edges(i + 1);
            used_edges_.erase(h);
        }
        m_.edges.erase(p_.edges[i]);
    }

    // Bindings are read off the image records: every attribute variable
    // tries every host key, then each bare value variable takes the value
    // found under its (resolved) key. verify_match decides the rest.
    void bind() {
        std::vector<std::pair<const Record*, const Record*>> pairs;
        for (const auto& [pn, hn] : m_.nodes)
            pairs.emplace_back(&p_.node_graph.at(pn)->top.node(pn).record, &h_.node_graph.at(hn)->top.node(hn).record);
        for (const auto& [pp, hp] : m_.ports)
            pairs.emplace_back(&p_.port_graph.at(pp)->top.port(pp).record, &h_.port_graph.at(hp)->top.port(hp).record);
        for (const auto& [pe, he] : m_.edges)
            pairs.emplace_back(&p_.edge_graph.at(pe)->top.edge(pe).record, &h_.edge_graph.at(he)->top.edge(he).record);

        std::vector<std::string> attr_vars;
        std::set<std::string> host_keys;
        for (const auto& [pr, hr] : pairs) {
            for (const auto& [k, v] : pr->pairs())
                if (r_.attribute_vars.count(k) && std::find(attr_vars.begin(), attr_vars.end(), k) == attr_vars.end())
                    attr_vars.push_back(k);
            for (const auto& [k, v] : hr->pairs()) host_keys.insert(k);
        }
        std::map<std::string, std::string> keys;
        assign(attr_vars, 0, host_keys, keys, pairs);
    }

    void assign(const std::vector<std::string>& vars, std::size_t i, const std::set<std::string>& host_keys,
                std::map<std::string, std::string>& keys,
                const std::vector<std::pair<const Record*, const Record*>>& pairs) {
        if (i < vars.size()) {
            for (const auto& k : host_keys) {
                keys[vars[i]] = k;
                assign(vars, i + 1, host_keys, keys, pairs);
            }
            keys.erase(vars[i]);
            return;
        }
        Morphism m = m_;
        m.bindings.attributes = keys;
        for (const auto& [pr, hr] : pairs) {
            for (const auto& [k, v] : pr->pairs()) {
                if (!v.is_var()) continue;
                auto key = keys.count(k) ? keys.at(k) : k;
                auto hv = hr->get(key);
                if (!hv || !hv->is_literal()) return;
                auto [it, fresh] = m.bindings.values.emplace(v.var_name(), hv->literal());
                if (!fresh && it->second != hv->literal()) return;
            }
        }
        if (!bind_graphs(m)) return;
        if (!verify_match(r_, host_, m)) out_.push_back(make_match(std::move(m)));
    }

    bool bind_graphs(Morphism& m) const {
        for (const auto& [pn, hn] : m.nodes) {
            const Ladder* pl = p_.node_graph.at(pn)->ladder(pn);
            if (!pl || !std::holds_alternative<GraphVar>(*pl)) continue;
            const Ladder* hl = h_.node_graph.at(hn)->ladder(hn);
            if (!hl || !std::holds_alternative<LadderGraph>(*hl)) return false;
            m.bindings.graphs.emplace(std::get<GraphVar>(*pl).name, std::get<LadderGraph>(*hl));
        }
        return true;
    }

    const Rule& r_;
    const AhpGraph& host_;
    Flat p_;
    Flat h_;
    std::vector<Match>& out_;
    Morphism m_;
    std::set<NodeId> used_nodes_;
    std::set<PortId> used_ports_;
    std::set<EdgeId> used_edges_;
};

} // namespace

std::vector<Match> brute_force_matches(const Rule& r, const AhpGraph& host, std::size_t max_size) {
    if (element_count(host) > max_size)
        throw std::invalid_argument("host has " + std::to_string(element_count(host)) + " elements, limit is " +
                                    std::to_string(max_size));
    std::vector<Match> out;
    Enumerator(r, host, out).run();
    std::sort(out.begin(), out.end(), canonical_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace ahp
