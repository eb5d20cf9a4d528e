#include "ahp/flatten.hpp"

namespace ahp {

namespace {

void flatten_into(const AhpGraph& g, PortGraph& out, std::map<PortId, PortId>& redirect) {
    for (const auto& [nid, l] : g.ladders) {
        auto w = std::get_if<LadderGraph>(&l);
        if (!w) throw GraphError("cannot flatten abstract ladder of " + to_string(nid));
        flatten_into(**w, out, redirect);
        const auto& inner = (*w)->top;
        for (PortId p : g.top.node(nid).ports) {
            auto name = g.top.port(p).record.concrete_name().value_or("");
            PortId target{};
            for (PortId q : interface(inner))
                if (inner.port(q).record.concrete_name() == name) target = q;
            if (target.value == 0)
                throw GraphError("ladder of " + to_string(nid) + " has no free port named '" + name + "'");
            auto again = redirect.find(target);
            redirect[p] = again == redirect.end() ? target : again->second;
        }
    }
    for (const auto& [nid, n] : g.top.nodes()) {
        if (g.ladders.count(nid)) continue;
        out.add_node(nid, n.record);
        for (PortId p : n.ports) out.add_port(p, nid, g.top.port(p).record);
    }
    auto resolve = [&](PortId p) {
        auto it = redirect.find(p);
        return it == redirect.end() ? p : it->second;
    };
    for (const auto& [eid, e] : g.top.edges()) out.add_edge(eid, resolve(e.source), resolve(e.target), e.record);
}

} // namespace

Flattened flatten_with_redirect(const AhpGraph& g) {
    Flattened f;
    flatten_into(g, f.graph, f.redirect);
    return f;
}

PortGraph flatten(const AhpGraph& g) { return flatten_with_redirect(g).graph; }

Rule flatten_rule(const Rule& r) {
    auto fl = flatten_with_redirect(r.lhs);
    auto fr = flatten_with_redirect(r.rhs);
    Rule out;
    out.name = r.name;
    out.lhs = AhpGraph{std::move(fl.graph)};
    out.rhs = AhpGraph{std::move(fr.graph)};
    out.condition = r.condition;
    out.attribute_vars = r.attribute_vars;
    auto follow = [](const std::map<PortId, PortId>& m, PortId p) {
        auto it = m.find(p);
        return it == m.end() ? p : it->second;
    };
    for (const auto& a : r.arrow) {
        ArrowPort b{a.kind, {}, {}};
        for (PortId p : a.lhs_ports) b.lhs_ports.push_back(follow(fl.redirect, p));
        for (PortId p : a.rhs_ports) b.rhs_ports.push_back(follow(fr.redirect, p));
        out.arrow.push_back(std::move(b));
    }
    return out;
}

} // namespace ahp
