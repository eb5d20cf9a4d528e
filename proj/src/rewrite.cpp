#include "ahp/rewrite.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "ahp/flatten.hpp"
#include "ahp/isomorphism.hpp"

namespace ahp {

namespace {

Record substitute(const Record& r, const Bindings& b, const std::set<std::string>& attribute_vars) {
    Record out;
    for (const auto& [k, v] : r.pairs()) {
        std::string key = k;
        if (attribute_vars.count(k)) {
            auto it = b.attributes.find(k);
            if (it == b.attributes.end()) throw RewriteError("attribute variable " + k + " is unbound");
            key = it->second;
        }
        if (out.contains(key)) throw RewriteError("attribute " + key + " would occur twice after substitution");
        auto res = evaluate(v, b.values);
        if (auto err = std::get_if<EvalError>(&res))
            throw RewriteError("cannot evaluate " + key + " = " + to_string(v) + ": " + err->message);
        out.set(key, Expr{std::get<Value>(res)});
    }
    return out;
}

enum class End { Outside, Bridge, Wire, Blackhole };

} // namespace

AhpGraph instantiate_rhs(const AhpGraph& rhs, const Bindings& b, const std::set<std::string>& attribute_vars,
                         IdAllocator& ids, Renumbering* map) {
    Renumbering local;
    Renumbering& m = map ? *map : local;
    AhpGraph out;
    for (const auto& [nid, n] : rhs.top.nodes()) {
        NodeId fresh = out.top.add_node(ids.node(), substitute(n.record, b, attribute_vars));
        m.nodes[nid] = fresh;
        for (PortId p : n.ports)
            m.ports[p] = out.top.add_port(ids.port(), fresh, substitute(rhs.top.port(p).record, b, attribute_vars));
    }
    for (const auto& [eid, e] : rhs.top.edges())
        m.edges[eid] = out.top.add_edge(ids.edge(), m.ports.at(e.source), m.ports.at(e.target),
                                        substitute(e.record, b, attribute_vars));
    for (const auto& [nid, l] : rhs.ladders) {
        if (auto w = std::get_if<LadderGraph>(&l)) {
            out.set_ladder(m.nodes.at(nid), instantiate_rhs(**w, b, attribute_vars, ids, &m));
            continue;
        }
        const auto& v = std::get<GraphVar>(l);
        auto it = b.graphs.find(v.name);
        if (it == b.graphs.end()) throw RewriteError("graph variable " + v.name + " is unbound");
        out.set_ladder(m.nodes.at(nid), renumber(*it->second, ids));
    }
    return out;
}

AhpGraph apply(const Rule& r, const AhpGraph& host, const Match& match, std::vector<RewireEntry>* log) {
    const auto& m = match.morphism;
    if (auto err = verify_match(r, host, m)) throw RewriteError("match is not valid for this graph: " + *err);

    std::set<NodeId> image_nodes;
    std::map<PortId, PortId> image_port;  // host port -> lhs port, top level only
    std::set<EdgeId> image_edges;
    for (const auto& [pn, hn] : m.nodes)
        if (r.lhs.top.has(pn)) image_nodes.insert(hn);
    for (const auto& [pp, hp] : m.ports)
        if (r.lhs.top.has(pp)) image_port[hp] = pp;
    for (const auto& [pe, he] : m.edges)
        if (r.lhs.top.has(pe)) image_edges.insert(he);

    std::set<EdgeId> external;
    for (const auto& [hp, pp] : image_port)
        for (EdgeId e : host.top.port(hp).edges)
            if (!image_edges.count(e)) external.insert(e);

    AhpGraph out = host;
    for (EdgeId e : image_edges) out.top.remove_edge(e);

    IdAllocator ids(max_id(host));
    Renumbering rn;
    AhpGraph inst = instantiate_rhs(r.rhs, m.bindings, r.attribute_vars, ids, &rn);
    for (const auto& [nid, n] : inst.top.nodes()) {
        out.top.add_node(nid, n.record);
        for (PortId p : n.ports) out.top.add_port(p, nid, inst.top.port(p).record);
    }
    for (const auto& [eid, e] : inst.top.edges()) out.top.add_edge(eid, e.source, e.target, e.record);
    for (const auto& [nid, l] : inst.ladders) out.ladders[nid] = l;

    const auto arrows = arrow_index(r);
    auto arrow_at = [&](PortId hp) -> std::optional<std::size_t> {
        auto it = image_port.find(hp);
        if (it == image_port.end()) return std::nullopt;
        return arrows.at(it->second);
    };
    auto kind_at = [&](PortId hp) {
        auto a = arrow_at(hp);
        if (!a) return End::Outside;
        switch (r.arrow[*a].kind) {
        case ArrowKind::Bridge: return End::Bridge;
        case ArrowKind::Wire: return End::Wire;
        default: return End::Blackhole;
        }
    };
    auto substitutes = [&](PortId hp) {
        auto a = arrow_at(hp);
        if (!a) return std::vector<PortId>{hp};
        std::vector<PortId> subs;
        for (PortId rp : r.arrow[*a].rhs_ports) subs.push_back(rn.ports.at(rp));
        return subs;
    };

    std::map<EdgeId, RewireEntry> entries;
    auto entry = [&](EdgeId e, ArrowKind k) -> RewireEntry& {
        auto [it, fresh] = entries.try_emplace(e);
        if (fresh) {
            it->second.edge = e;
            it->second.kind = k;
            const auto& ed = host.top.edge(e);
            for (PortId p : {ed.source, ed.target})
                if (image_port.count(p)) it->second.from.push_back(p);
        }
        return it->second;
    };

    // Bridges: every edge whose image ends are all bridged is copied once per
    // combination of substitutes.
    for (EdgeId e : external) {
        const auto& ed = host.top.edge(e);
        End ks = kind_at(ed.source);
        End kt = kind_at(ed.target);
        if (ks == End::Wire || ks == End::Blackhole || kt == End::Wire || kt == End::Blackhole) continue;
        auto& log_entry = entry(e, ArrowKind::Bridge);
        for (PortId s : substitutes(ed.source))
            for (PortId t : substitutes(ed.target))
                log_entry.created.push_back(out.top.add_edge(ids.edge(), s, t, ed.record));
    }

    // Wires: follow external edges through wired port pairs until a port
    // outside the image (or a bridged one) is reached; each such walk
    // becomes one edge. A blackhole or a reused wire ends the walk.
    std::map<PortId, std::pair<PortId, std::size_t>> partner;
    for (std::size_t i = 0; i < r.arrow.size(); ++i) {
        const auto& a = r.arrow[i];
        if (a.kind != ArrowKind::Wire || a.lhs_ports.size() != 2) continue;
        PortId q1 = m.ports.at(a.lhs_ports[0]);
        PortId q2 = m.ports.at(a.lhs_ports[1]);
        partner[q1] = {q2, i};
        partner[q2] = {q1, i};
    }
    using Walk = std::tuple<std::vector<EdgeId>, PortId, PortId>;
    std::set<Walk> walks;
    std::vector<EdgeId> path;
    std::set<std::size_t> used_wires;
    std::function<void(PortId, PortId)> walk = [&](PortId start, PortId at) {
        End k = kind_at(at);
        if (k == End::Outside || k == End::Bridge) {
            auto rev = path;
            std::reverse(rev.begin(), rev.end());
            walks.insert(std::min(Walk{path, start, at}, Walk{rev, at, start}));
            return;
        }
        if (k == End::Blackhole) return;
        auto [other, wire] = partner.at(at);
        if (!used_wires.insert(wire).second) return;
        for (EdgeId e : host.top.port(other).edges) {
            if (!external.count(e) || std::find(path.begin(), path.end(), e) != path.end()) continue;
            path.push_back(e);
            walk(start, host.top.opposite(e, other));
            path.pop_back();
        }
        used_wires.erase(wire);
    };
    for (EdgeId e : external) {
        const auto& ed = host.top.edge(e);
        for (auto [from, to] : {std::pair{ed.source, ed.target}, std::pair{ed.target, ed.source}}) {
            End kf = kind_at(from);
            if ((kf == End::Outside || kf == End::Bridge) && kind_at(to) == End::Wire) {
                path = {e};
                walk(from, to);
            }
        }
    }
    for (const auto& [edges, start, end] : walks) {
        const Record rec = Record::named(std::string{"wire"});
        std::vector<EdgeId> created;
        for (PortId s : substitutes(start))
            for (PortId t : substitutes(end)) created.push_back(out.top.add_edge(ids.edge(), s, t, rec));
        for (EdgeId e : edges) {
            auto& log_entry = entry(e, ArrowKind::Wire);
            log_entry.created.insert(log_entry.created.end(), created.begin(), created.end());
        }
    }

    for (EdgeId e : external) {
        if (!entries.count(e)) {
            const auto& ed = host.top.edge(e);
            bool black = kind_at(ed.source) == End::Blackhole || kind_at(ed.target) == End::Blackhole;
            entry(e, black ? ArrowKind::Blackhole : ArrowKind::Wire);
        }
        out.top.remove_edge(e);
    }
    for (NodeId n : image_nodes) {
        out.top.remove_node(n);
        out.ladders.erase(n);
    }
    if (log)
        for (auto& [e, en] : entries) log->push_back(std::move(en));
    return out;
}

RewriteStep rewrite_step(const Rule& r, const AhpGraph& host, const Match& m) {
    RewriteStep step;
    step.rule = r.name;
    step.match = m;
    step.before = host;
    step.after = apply(r, host, m, &step.rewiring);
    return step;
}

bool check_flatten_commutes(const Rule& r, const AhpGraph& host, const Match& m, std::string* why) {
    auto fail = [&](std::string msg) {
        if (why) *why = std::move(msg);
        return false;
    };
    AhpGraph after = apply(r, host, m);
    Rule fr = flatten_rule(r);
    AhpGraph flat_host{flatten(host)};

    Morphism fm;
    fm.bindings = m.morphism.bindings;
    for (const auto& [pn, hn] : m.morphism.nodes)
        if (fr.lhs.top.has(pn)) fm.nodes[pn] = hn;
    for (const auto& [pp, hp] : m.morphism.ports)
        if (fr.lhs.top.has(pp)) fm.ports[pp] = hp;
    for (const auto& [pe, he] : m.morphism.edges)
        if (fr.lhs.top.has(pe)) fm.edges[pe] = he;
    if (auto err = verify_match(fr, flat_host, fm)) return fail("induced flat match is invalid: " + *err);

    AhpGraph flat_after = apply(fr, flat_host, make_match(fm));
    if (!isomorphic(flatten(after), flat_after.top))
        return fail("flattening the result differs from rewriting the flattened graph");
    return true;
}

} // namespace ahp
