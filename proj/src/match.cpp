#include "ahp/match.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include "ahp/isomorphism.hpp"

namespace ahp {

bool operator==(const Bindings& a, const Bindings& b) {
    if (a.values != b.values || a.attributes != b.attributes || a.graphs.size() != b.graphs.size()) return false;
    for (auto ia = a.graphs.begin(), ib = b.graphs.begin(); ia != a.graphs.end(); ++ia, ++ib) {
        if (ia->first != ib->first) return false;
        if (ia->second != ib->second && !isomorphic(*ia->second, *ib->second)) return false;
    }
    return true;
}

Match make_match(Morphism m) {
    Match out;
    for (const auto& [p, h] : m.nodes) out.image_nodes.insert(h);
    for (const auto& [p, h] : m.ports) out.image_ports.insert(h);
    for (const auto& [p, h] : m.edges) out.image_edges.insert(h);
    out.morphism = std::move(m);
    return out;
}

bool canonical_less(const Match& a, const Match& b) {
    const auto& ma = a.morphism;
    const auto& mb = b.morphism;
    return std::tie(a.image_nodes, ma.nodes, ma.ports, ma.edges, ma.bindings.values, ma.bindings.attributes) <
           std::tie(b.image_nodes, mb.nodes, mb.ports, mb.edges, mb.bindings.values, mb.bindings.attributes);
}

ComponentIndex::ComponentIndex(const AhpGraph& g) {
    std::function<void(const AhpGraph&, NodeId)> walk = [&](const AhpGraph& c, NodeId owner) {
        component[owner] = &c;
        for (const auto& [id, n] : c.top.nodes()) node_owner[id] = owner;
        for (const auto& [id, p] : c.top.ports()) port_owner[id] = owner;
        for (const auto& [id, e] : c.top.edges()) edge_owner[id] = owner;
        for (const auto& [n, l] : c.ladders)
            if (auto w = std::get_if<LadderGraph>(&l)) walk(**w, n);
    };
    walk(g, NodeId{});
}

namespace {

bool unify_value(const Expr& pattern, const Expr& host, ValueEnv& env) {
    if (!host.is_literal()) return pattern == host;
    const Value& hv = host.literal();
    if (pattern.is_literal()) return pattern.literal() == hv;
    if (pattern.is_var()) {
        auto [it, fresh] = env.emplace(pattern.var_name(), hv);
        return fresh || it->second == hv;
    }
    auto r = evaluate(pattern, env);
    auto v = std::get_if<Value>(&r);
    return v && *v == hv;
}

void assign_keys(const Record& pattern, const Record& host, const std::vector<std::string>& var_keys, std::size_t i,
                 const std::set<std::string>& remaining, const Bindings& b, std::vector<Bindings>& out) {
    if (i == var_keys.size()) {
        out.push_back(b);
        return;
    }
    const auto& x = var_keys[i];
    const Expr pv = *pattern.get(x);
    auto try_key = [&](const std::string& key) {
        Bindings next = b;
        next.attributes[x] = key;
        if (!unify_value(pv, *host.get(key), next.values)) return;
        auto rest = remaining;
        rest.erase(key);
        assign_keys(pattern, host, var_keys, i + 1, rest, next, out);
    };
    if (auto it = b.attributes.find(x); it != b.attributes.end()) {
        if (remaining.count(it->second)) try_key(it->second);
        return;
    }
    for (const auto& key : remaining) try_key(key);
}

bool oriented_pattern(const Record& r) {
    auto o = r.get(kOriented);
    if (!o || !o->is_literal()) return false;
    auto b = std::get_if<bool>(&o->literal());
    return b && *b;
}

bool endpoints_fit(bool oriented, const EdgeData& host, PortId fs, PortId ft) {
    if (host.source == fs && host.target == ft) return true;
    return !oriented && host.source == ft && host.target == fs;
}

bool node_compatible(const AhpGraph& P, NodeId pn, const AhpGraph& H, NodeId hn) {
    const auto& pr = P.top.node(pn).record;
    const auto& hr = H.top.node(hn).record;
    if (pr.size() != hr.size()) return false;
    if (auto name = pr.concrete_name(); name && hr.concrete_name() != name) return false;
    if ((P.ladder(pn) != nullptr) != (H.ladder(hn) != nullptr)) return false;
    if (auto l = H.ladder(hn); l && !std::holds_alternative<LadderGraph>(*l)) return false;
    return P.top.node_interface(pn) == H.top.node_interface(hn);
}

std::vector<std::string> sorted_free_names(const AhpGraph& g) {
    std::vector<std::string> names;
    for (PortId p : interface(g.top)) names.push_back(g.top.port(p).record.concrete_name().value_or(""));
    std::sort(names.begin(), names.end());
    return names;
}

bool graph_var_fits(const GraphVar& v, const LadderGraph& host, const Bindings& b) {
    auto declared = v.interface;
    std::sort(declared.begin(), declared.end());
    if (sorted_free_names(*host) != declared) return false;
    auto it = b.graphs.find(v.name);
    return it == b.graphs.end() || it->second == host || isomorphic(*it->second, *host);
}

struct State {
    Morphism m;
    std::set<NodeId> used_nodes;
    std::set<PortId> used_ports;
    std::set<EdgeId> used_edges;
};

using Cont = std::function<void(const State&)>;

class Matcher {
public:
    explicit Matcher(const std::set<std::string>& attribute_vars) : attribute_vars_(attribute_vars) {}

    bool stopped = false;

    void component(const AhpGraph& P, const AhpGraph& H, bool exact, const State& st, const Cont& k) {
        if (exact && (P.top.nodes().size() != H.top.nodes().size() ||
                      P.top.ports().size() != H.top.ports().size() ||
                      P.top.edges().size() != H.top.edges().size()))
            return;
        auto order = node_order(P, H);
        std::vector<EdgeId> edges;
        for (const auto& [e, ed] : P.top.edges()) edges.push_back(e);
        assign_node(P, H, order, edges, 0, st, k);
    }

    void ladder(const Ladder& pl, const LadderGraph& hw, const State& st, const Cont& k) {
        if (auto v = std::get_if<GraphVar>(&pl)) {
            if (!graph_var_fits(*v, hw, st.m.bindings)) return;
            State next = st;
            next.m.bindings.graphs.emplace(v->name, hw);
            k(next);
            return;
        }
        component(*std::get<LadderGraph>(pl), *hw, true, st, k);
    }

private:
    std::vector<NodeId> node_order(const AhpGraph& P, const AhpGraph& H) const {
        std::map<NodeId, std::size_t> candidates;
        for (const auto& [pn, pd] : P.top.nodes()) {
            std::size_t c = 0;
            for (const auto& [hn, hd] : H.top.nodes())
                if (node_compatible(P, pn, H, hn)) ++c;
            candidates[pn] = c;
        }
        std::vector<NodeId> order;
        std::set<NodeId> placed;
        while (order.size() < candidates.size()) {
            NodeId best{};
            std::tuple<int, std::size_t> best_key{-1, 0};
            for (const auto& [pn, c] : candidates) {
                if (placed.count(pn)) continue;
                int links = 0;
                for (PortId p : P.top.node(pn).ports)
                    for (EdgeId e : P.top.port(p).edges)
                        if (placed.count(P.top.port(P.top.opposite(e, p)).node)) ++links;
                // More links to placed nodes first, then fewer candidates.
                std::tuple<int, std::size_t> key{links, ~c};
                if (best.value == 0 || key > best_key) best = pn, best_key = key;
            }
            order.push_back(best);
            placed.insert(best);
        }
        return order;
    }

    void assign_node(const AhpGraph& P, const AhpGraph& H, const std::vector<NodeId>& order,
                     const std::vector<EdgeId>& edges, std::size_t i, const State& st, const Cont& k) {
        if (stopped) return;
        if (i == order.size()) {
            assign_edge(P, H, edges, 0, st, k);
            return;
        }
        NodeId pn = order[i];
        const auto& pd = P.top.node(pn);
        for (const auto& [hn, hd] : H.top.nodes()) {
            if (stopped) return;
            if (st.used_nodes.count(hn) || !node_compatible(P, pn, H, hn)) continue;
            for (auto& b : unify_record(pd.record, hd.record, st.m.bindings, attribute_vars_)) {
                State next = st;
                next.m.bindings = std::move(b);
                next.m.nodes[pn] = hn;
                next.used_nodes.insert(hn);
                assign_port(P, H, pn, hn, 0, next, [&](const State& s) {
                    if (!edges_feasible(P, H, pn, s)) return;
                    auto cont = [&](const State& s2) { assign_node(P, H, order, edges, i + 1, s2, k); };
                    const Ladder* pl = P.ladder(pn);
                    if (!pl) {
                        cont(s);
                        return;
                    }
                    ladder(*pl, std::get<LadderGraph>(*H.ladder(hn)), s, cont);
                });
            }
        }
    }

    void assign_port(const AhpGraph& P, const AhpGraph& H, NodeId pn, NodeId hn, std::size_t j, const State& st,
                     const Cont& k) {
        const auto& pports = P.top.node(pn).ports;
        if (j == pports.size()) {
            k(st);
            return;
        }
        PortId pp = pports[j];
        PortId hp = H.top.node(hn).ports[j];
        for (auto& b : unify_record(P.top.port(pp).record, H.top.port(hp).record, st.m.bindings, attribute_vars_)) {
            State next = st;
            next.m.bindings = std::move(b);
            next.m.ports[pp] = hp;
            next.used_ports.insert(hp);
            assign_port(P, H, pn, hn, j + 1, next, k);
        }
    }

    // Every pattern edge from pn's ports to already-mapped ports needs some
    // host edge between the images.
    bool edges_feasible(const AhpGraph& P, const AhpGraph& H, NodeId pn, const State& st) const {
        for (PortId pp : P.top.node(pn).ports) {
            for (EdgeId e : P.top.port(pp).edges) {
                const auto& ed = P.top.edge(e);
                auto fs = st.m.ports.find(ed.source);
                auto ft = st.m.ports.find(ed.target);
                if (fs == st.m.ports.end() || ft == st.m.ports.end()) continue;
                bool oriented = oriented_pattern(ed.record);
                bool any = false;
                for (EdgeId he : H.top.port(fs->second).edges)
                    if (endpoints_fit(oriented, H.top.edge(he), fs->second, ft->second)) any = true;
                if (!any) return false;
            }
        }
        return true;
    }

    void assign_edge(const AhpGraph& P, const AhpGraph& H, const std::vector<EdgeId>& edges, std::size_t j,
                     const State& st, const Cont& k) {
        if (stopped) return;
        if (j == edges.size()) {
            k(st);
            return;
        }
        const auto& ped = P.top.edge(edges[j]);
        PortId fs = st.m.ports.at(ped.source);
        PortId ft = st.m.ports.at(ped.target);
        bool oriented = oriented_pattern(ped.record);
        for (EdgeId he : H.top.port(fs).edges) {
            if (st.used_edges.count(he)) continue;
            const auto& hed = H.top.edge(he);
            if (!endpoints_fit(oriented, hed, fs, ft)) continue;
            for (auto& b : unify_record(ped.record, hed.record, st.m.bindings, attribute_vars_)) {
                State next = st;
                next.m.bindings = std::move(b);
                next.m.edges[edges[j]] = he;
                next.used_edges.insert(he);
                assign_edge(P, H, edges, j + 1, next, k);
            }
        }
    }

    const std::set<std::string>& attribute_vars_;
};

bool record_matches(const Record& pattern, const Record& host, const Bindings& b,
                    const std::set<std::string>& attribute_vars) {
    Record inst;
    for (const auto& [k, v] : pattern.pairs()) {
        std::string key = k;
        if (attribute_vars.count(k)) {
            auto it = b.attributes.find(k);
            if (it == b.attributes.end()) return false;
            key = it->second;
        }
        if (inst.contains(key)) return false;
        auto r = evaluate(v, b.values);
        auto val = std::get_if<Value>(&r);
        if (!val) return false;
        inst.set(key, Expr{*val});
    }
    return inst == host;
}

} // namespace

std::vector<Bindings> unify_record(const Record& pattern, const Record& host, const Bindings& env,
                                   const std::set<std::string>& attribute_vars) {
    std::vector<Bindings> out;
    if (pattern.size() != host.size()) return out;
    Bindings b = env;
    std::vector<std::string> var_keys;
    std::set<std::string> rest = atts(host);
    for (const auto& [k, v] : pattern.pairs()) {
        if (attribute_vars.count(k)) {
            var_keys.push_back(k);
            continue;
        }
        auto hv = host.get(k);
        if (!hv || !unify_value(v, *hv, b.values)) return out;
        rest.erase(k);
    }
    assign_keys(pattern, host, var_keys, 0, rest, b, out);
    return out;
}

bool eval_condition(const Expr& condition, const Morphism& m, std::string* diagnostic) {
    return evaluate_condition(condition, m.bindings.values, diagnostic);
}

std::vector<Match> find_matches(const Rule& r, const AhpGraph& host, std::vector<std::string>* diagnostics) {
    std::vector<Match> out;
    auto arrow = arrow_index(r);
    ComponentIndex hidx(host);
    Matcher matcher(r.attribute_vars);
    matcher.component(r.lhs, host, false, State{}, [&](const State& s) {
        for (const auto& [pp, hp] : s.m.ports) {
            if (arrow.count(pp)) continue;
            for (EdgeId e : hidx.graph_of(hp).port(hp).edges)
                if (!s.used_edges.count(e)) return;
        }
        std::string diag;
        if (!eval_condition(r.condition, s.m, &diag)) {
            if (diagnostics && !diag.empty()) diagnostics->push_back("rule '" + r.name + "': " + diag);
            return;
        }
        out.push_back(make_match(s.m));
    });
    std::sort(out.begin(), out.end(), canonical_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<Morphism> match_ladder(const Ladder& pattern, const LadderGraph& host, const Bindings& env,
                                     const std::set<std::string>& attribute_vars) {
    std::optional<Morphism> found;
    if (!host) return found;
    Matcher matcher(attribute_vars);
    State st;
    st.m.bindings = env;
    matcher.ladder(pattern, host, st, [&](const State& s) {
        found = s.m;
        matcher.stopped = true;
    });
    return found;
}

std::optional<std::string> verify_match(const Rule& r, const AhpGraph& host, const Morphism& m) {
    ComponentIndex pi(r.lhs);
    ComponentIndex hi(host);
    const auto& av = r.attribute_vars;

    if (m.nodes.size() != pi.node_owner.size() || m.ports.size() != pi.port_owner.size() ||
        m.edges.size() != pi.edge_owner.size())
        return "morphism is not total on the left-hand side";

    auto image_owner = [&](NodeId pattern_owner) {
        return pattern_owner.value == 0 ? NodeId{} : m.nodes.at(pattern_owner);
    };

    std::set<NodeId> ns;
    for (const auto& [pn, hn] : m.nodes) {
        if (!pi.node_owner.count(pn)) return "morphism maps unknown node " + to_string(pn);
        auto ho = hi.node_owner.find(hn);
        if (ho == hi.node_owner.end()) return "node " + to_string(pn) + " maps outside the host";
        if (!ns.insert(hn).second) return "node map is not injective at " + to_string(hn);
        if (ho->second != image_owner(pi.node_owner.at(pn)))
            return "node " + to_string(pn) + " maps to a different level or ladder";
    }
    std::set<PortId> ps;
    for (const auto& [pp, hp] : m.ports) {
        if (!pi.port_owner.count(pp)) return "morphism maps unknown port " + to_string(pp);
        auto ho = hi.port_owner.find(hp);
        if (ho == hi.port_owner.end()) return "port " + to_string(pp) + " maps outside the host";
        if (!ps.insert(hp).second) return "port map is not injective at " + to_string(hp);
        if (ho->second != image_owner(pi.port_owner.at(pp)))
            return "port " + to_string(pp) + " maps to a different level or ladder";
    }
    std::set<EdgeId> es;
    for (const auto& [pe, he] : m.edges) {
        if (!pi.edge_owner.count(pe)) return "morphism maps unknown edge " + to_string(pe);
        auto ho = hi.edge_owner.find(he);
        if (ho == hi.edge_owner.end()) return "edge " + to_string(pe) + " maps outside the host";
        if (!es.insert(he).second) return "edge map is not injective at " + to_string(he);
        if (ho->second != image_owner(pi.edge_owner.at(pe)))
            return "edge " + to_string(pe) + " maps to a different level or ladder";
    }

    for (const auto& [pn, hn] : m.nodes) {
        const AhpGraph& P = *pi.component.at(pi.node_owner.at(pn));
        const AhpGraph& H = *hi.component.at(hi.node_owner.at(hn));
        const auto& pports = P.top.node(pn).ports;
        const auto& hports = H.top.node(hn).ports;
        if (pports.size() != hports.size()) return "node " + to_string(pn) + " has a different port count";
        for (std::size_t i = 0; i < pports.size(); ++i)
            if (m.ports.at(pports[i]) != hports[i])
                return "port " + to_string(pports[i]) + " is not attached to the image of its node";
        if (P.top.node_interface(pn) != H.top.node_interface(hn))
            return "node " + to_string(pn) + " has a different Interface";
        if (!record_matches(P.top.node(pn).record, H.top.node(hn).record, m.bindings, av))
            return "node " + to_string(pn) + " record does not match";
        const Ladder* pl = P.ladder(pn);
        const Ladder* hl = H.ladder(hn);
        if ((pl == nullptr) != (hl == nullptr)) return "node " + to_string(pn) + " disagrees on having a ladder";
        if (!pl) continue;
        auto hw = std::get_if<LadderGraph>(hl);
        if (!hw) return "host ladder of " + to_string(hn) + " is abstract";
        if (auto v = std::get_if<GraphVar>(pl)) {
            auto it = m.bindings.graphs.find(v->name);
            if (it == m.bindings.graphs.end()) return "graph variable " + v->name + " is unbound";
            if (!graph_var_fits(*v, *hw, m.bindings))
                return "graph variable " + v->name + " is bound inconsistently";
        } else {
            const auto& w = *std::get<LadderGraph>(*pl);
            if (w.top.nodes().size() != (*hw)->top.nodes().size() ||
                w.top.ports().size() != (*hw)->top.ports().size() ||
                w.top.edges().size() != (*hw)->top.edges().size())
                return "ladder of " + to_string(pn) + " is not matched bijectively";
        }
    }
    for (const auto& [pp, hp] : m.ports) {
        const auto& pr = pi.component.at(pi.port_owner.at(pp))->top.port(pp).record;
        if (!record_matches(pr, hi.graph_of(hp).port(hp).record, m.bindings, av))
            return "port " + to_string(pp) + " record does not match";
    }
    for (const auto& [pe, he] : m.edges) {
        const auto& ped = pi.component.at(pi.edge_owner.at(pe))->top.edge(pe);
        const auto& hed = hi.component.at(hi.edge_owner.at(he))->top.edge(he);
        // Spelled out rather than shared with the search, so the oracle
        // does not inherit its mistakes.
        const PortId s = m.ports.at(ped.source), t = m.ports.at(ped.target);
        const bool ordered = ped.record.get(kOriented) == std::optional<AttrValue>{Expr{true}};
        const bool same_way = hed.source == s && hed.target == t;
        const bool other_way = hed.source == t && hed.target == s;
        if (!same_way && (ordered || !other_way))
            return "edge " + to_string(pe) + " does not connect the images of its ports";
        if (!record_matches(ped.record, hed.record, m.bindings, av))
            return "edge " + to_string(pe) + " record does not match";
    }

    auto arrow = arrow_index(r);
    for (const auto& [pp, hp] : m.ports) {
        if (arrow.count(pp)) continue;
        for (EdgeId e : hi.graph_of(hp).port(hp).edges)
            if (!es.count(e))
                return "dangling edge " + to_string(e) + " at port " + to_string(hp) + " (image of " + to_string(pp) +
                       ", which has no arrow edge)";
    }
    std::string diag;
    if (!eval_condition(r.condition, m, &diag))
        return "condition does not hold" + (diag.empty() ? std::string{} : ": " + diag);
    return std::nullopt;
}

} // namespace ahp
