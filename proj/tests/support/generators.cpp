#include "generators.hpp"

#include <algorithm>

namespace ahp::gen {

namespace {

struct Kind {
    const char* name;
    std::vector<std::string> ports;
    bool has_val;
    const char* graph_var;
};

const std::vector<Kind>& kinds() {
    static const std::vector<Kind> k{
        {"A", {"a", "b"}, true, "GA"},
        {"B", {"a"}, false, "GB"},
        {"C", {"a", "b", "c"}, true, "GC"},
        {"D", {}, true, nullptr},
    };
    return k;
}

const Kind& kind_named(const std::string& name) {
    for (const auto& k : kinds())
        if (name == k.name) return k;
    return kinds().front();
}

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
bool coin(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }

template <class T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
    return xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1))];
}

Record edge_record(Rng& rng) {
    if (coin(rng, 0.3)) return Record{{kName, Expr{std::string("d")}}, {kOriented, Expr{true}}};
    return Record::named(std::string{"e"});
}

NodeId add_node(Rng& rng, AhpGraph& g, IdAllocator& ids, const Kind& k) {
    Record r = Record::named(std::string{k.name});
    if (k.has_val) r.set("val", Expr{static_cast<double>(uniform(rng, 0, 3))});
    NodeId n = g.top.add_node(ids.node(), r);
    for (const auto& p : k.ports) g.top.add_port(ids.port(), n, Record::named(p));
    return n;
}

AhpGraph build(Rng& rng, IdAllocator& ids, const GraphShape& shape, int depth,
               const std::vector<std::string>* required);

void maybe_ladder(Rng& rng, AhpGraph& g, IdAllocator& ids, const GraphShape& shape, int depth, NodeId n,
                  const Kind& k) {
    if (depth <= 0 || k.ports.empty() || !coin(rng, shape.ladder_p)) return;
    g.set_ladder(n, build(rng, ids, shape, depth - 1, &k.ports));
}

// With `required`, builds a ladder body: exactly one free port per required
// name and every other port paired by an edge (loops for an odd one out).
AhpGraph build(Rng& rng, IdAllocator& ids, const GraphShape& shape, int depth,
               const std::vector<std::string>* required) {
    AhpGraph g;
    int n = required ? uniform(rng, 1, 2) : uniform(rng, 1, shape.max_top_nodes);
    for (int i = 0; i < n; ++i) {
        const Kind& k = pick(rng, kinds());
        NodeId id = add_node(rng, g, ids, k);
        maybe_ladder(rng, g, ids, shape, depth, id, k);
    }
    if (!required) {
        std::vector<PortId> ports;
        for (const auto& [p, pd] : g.top.ports()) ports.push_back(p);
        if (!ports.empty()) {
            int m = uniform(rng, 0, shape.max_edges);
            for (int i = 0; i < m; ++i) g.top.add_edge(ids.edge(), pick(rng, ports), pick(rng, ports), edge_record(rng));
        }
        return g;
    }
    auto ports_named = [&](const std::string& name) {
        std::vector<PortId> out;
        for (const auto& [p, pd] : g.top.ports())
            if (pd.record.concrete_name() == name) out.push_back(p);
        return out;
    };
    bool missing = false;
    for (const auto& name : *required) missing = missing || ports_named(name).empty();
    if (missing) add_node(rng, g, ids, kind_named("C"));
    std::set<PortId> free;
    for (const auto& name : *required) free.insert(pick(rng, ports_named(name)));
    std::vector<PortId> rest;
    for (const auto& [p, pd] : g.top.ports())
        if (!free.count(p)) rest.push_back(p);
    std::shuffle(rest.begin(), rest.end(), rng);
    for (std::size_t i = 0; i < rest.size(); i += 2) {
        PortId other = i + 1 < rest.size() ? rest[i + 1] : rest[i];
        g.top.add_edge(ids.edge(), rest[i], other, edge_record(rng));
    }
    if (!rest.empty() && coin(rng, 0.3)) g.top.add_edge(ids.edge(), pick(rng, rest), pick(rng, rest), edge_record(rng));
    return g;
}

// Deep copy with fresh ids; `node_record` may rewrite node records.
template <class F>
AhpGraph copy_with(const AhpGraph& src, IdAllocator& ids, F&& node_record, Renumbering& m) {
    AhpGraph out;
    for (const auto& [nid, n] : src.top.nodes()) {
        NodeId fresh = out.top.add_node(ids.node(), node_record(n.record));
        m.nodes[nid] = fresh;
        for (PortId p : n.ports) m.ports[p] = out.top.add_port(ids.port(), fresh, src.top.port(p).record);
    }
    for (const auto& [eid, e] : src.top.edges())
        m.edges[eid] = out.top.add_edge(ids.edge(), m.ports.at(e.source), m.ports.at(e.target), e.record);
    for (const auto& [nid, l] : src.ladders) {
        if (auto w = std::get_if<LadderGraph>(&l))
            out.set_ladder(m.nodes.at(nid), copy_with(**w, ids, node_record, m));
        else
            out.ladders[m.nodes.at(nid)] = l;
    }
    return out;
}

std::vector<std::string> value_vars(const Rule& r) {
    auto vs = variables_of(r.lhs, r.attribute_vars).values;
    return {vs.begin(), vs.end()};
}

Expr rhs_value(Rng& rng, const std::vector<std::string>& vars) {
    if (vars.empty() || coin(rng, 0.4)) return Expr{static_cast<double>(uniform(rng, 0, 3))};
    Expr x = Expr::var(pick(rng, vars));
    switch (uniform(rng, 0, 2)) {
    case 0: return x;
    case 1: return Expr::binary(Expr::Op::Add, x, Expr{1.0});
    default: return Expr::binary(Expr::Op::Mul, x, Expr{2.0});
    }
}

} // namespace

Signature signature() {
    Signature s;
    s.attributes = {"val"};
    for (int i = 0; i < 64; ++i) s.value_vars.insert("X" + std::to_string(i));
    s.attribute_vars = {"K"};
    for (const auto& k : kinds())
        if (k.graph_var)
            for (int i = 0; i < 8; ++i) s.graph_vars[k.graph_var + std::to_string(i)] = k.ports;
    return s;
}

AhpGraph graph(Rng& rng, const GraphShape& shape) {
    for (;;) {
        IdAllocator ids;
        AhpGraph g = build(rng, ids, shape, shape.max_depth, nullptr);
        if (element_count(g) <= shape.max_elements) return g;
    }
}

AhpGraph flat_graph(Rng& rng, std::size_t max_elements) {
    GraphShape s;
    s.max_depth = 0;
    s.max_elements = max_elements;
    return graph(rng, s);
}

IdAllocator ids_above(const Rule& r) { return IdAllocator(std::max(max_id(r.lhs), max_id(r.rhs))); }

Derived copy_pattern(Rng& rng, const AhpGraph& host, const RuleShape& shape, std::vector<NodeId> nodes) {
    Derived d;
    Rule& r = d.rule;
    r.name = "generated";
    r.attribute_vars = {"K"};
    if (nodes.empty()) {
        std::vector<NodeId> all;
        for (const auto& [n, nd] : host.top.nodes()) all.push_back(n);
        std::shuffle(all.begin(), all.end(), rng);
        int k = uniform(rng, 1, std::min<int>(shape.max_lhs_nodes, static_cast<int>(all.size())));
        nodes.assign(all.begin(), all.begin() + k);
    }
    std::sort(nodes.begin(), nodes.end());

    // Equal literals may share a variable, which the copy still satisfies.
    std::map<double, std::string> shared;
    int next_var = 0;
    auto varify = [&](const Record& rec) {
        Record out = rec;
        auto v = rec.get("val");
        if (!v) return out;
        if (coin(rng, shape.var_p) && next_var < 64) {
            double lit = std::get<double>(v->literal());
            auto it = shared.find(lit);
            std::string name;
            if (it != shared.end() && coin(rng, 0.5)) {
                name = it->second;
            } else {
                name = "X" + std::to_string(next_var++);
                shared[lit] = name;
            }
            out.set("val", Expr::var(name));
        }
        if (coin(rng, shape.attr_var_p)) {
            Expr value = *out.get("val");
            out.erase("val");
            out.set("K", value);
        }
        return out;
    };

    IdAllocator ids(max_id(host));
    Renumbering m;
    std::set<PortId> chosen_ports;
    for (NodeId hn : nodes) {
        const auto& nd = host.top.node(hn);
        NodeId ln = r.lhs.top.add_node(ids.node(), varify(nd.record));
        d.lhs_to_host_nodes[ln] = hn;
        for (PortId hp : nd.ports) {
            PortId lp = r.lhs.top.add_port(ids.port(), ln, host.top.port(hp).record);
            m.ports[hp] = lp;
            d.lhs_to_host_ports[lp] = hp;
            chosen_ports.insert(hp);
        }
        if (const Ladder* l = host.ladder(hn)) {
            const Kind& k = kind_named(nd.record.concrete_name().value_or("A"));
            if (k.graph_var && coin(rng, shape.graph_var_p)) {
                // One variable per copied ladder; distinct ladders need not be isomorphic.
                r.lhs.set_ladder(ln, GraphVar{k.graph_var + std::to_string(r.lhs.ladders.size()), k.ports});
            } else {
                Renumbering inner;
                r.lhs.set_ladder(ln, copy_with(*std::get<LadderGraph>(*l), ids, varify, inner));
            }
        }
    }
    for (const auto& [he, ed] : host.top.edges()) {
        if (!chosen_ports.count(ed.source) || !chosen_ports.count(ed.target)) continue;
        if (!coin(rng, shape.edge_keep_p)) continue;
        r.lhs.top.add_edge(ids.edge(), m.ports.at(ed.source), m.ports.at(ed.target), ed.record);
        d.host_interior.insert(he);
    }
    for (const auto& [lp, hp] : d.lhs_to_host_ports)
        for (EdgeId e : host.top.port(hp).edges)
            if (!d.host_interior.count(e)) d.external.insert(lp);
    return d;
}

AhpGraph random_rhs(Rng& rng, IdAllocator& ids, const RuleShape& shape, const Rule& lhs_side) {
    auto vars = value_vars(lhs_side);
    bool uses_k = !variables_of(lhs_side.lhs, lhs_side.attribute_vars).attributes.empty();
    std::multimap<std::string, GraphVar> carriers;  // node Name -> graph variables
    for (const auto& [n, l] : lhs_side.lhs.ladders)
        if (auto v = std::get_if<GraphVar>(&l))
            carriers.emplace(lhs_side.lhs.top.node(n).record.concrete_name().value_or(""), *v);

    GraphShape ladder_shape;
    ladder_shape.max_depth = 1;
    AhpGraph g;
    int n = uniform(rng, 0, shape.max_rhs_nodes);
    for (int i = 0; i < n; ++i) {
        const Kind& k = pick(rng, kinds());
        Record rec = Record::named(std::string{k.name});
        if (k.has_val) rec.set(uses_k && coin(rng, 0.2) ? "K" : "val", rhs_value(rng, vars));
        NodeId id = g.top.add_node(ids.node(), rec);
        for (const auto& p : k.ports) g.top.add_port(ids.port(), id, Record::named(p));
        auto [lo, hi] = carriers.equal_range(k.name);
        if (lo != hi && coin(rng, 0.5)) {
            std::vector<GraphVar> options;
            for (auto it = lo; it != hi; ++it) options.push_back(it->second);
            g.set_ladder(id, pick(rng, options));
        } else if (!k.ports.empty() && coin(rng, 0.25)) {
            g.set_ladder(id, build(rng, ids, ladder_shape, 1, &k.ports));
        }
    }
    std::vector<PortId> ports;
    for (const auto& [p, pd] : g.top.ports()) ports.push_back(p);
    if (!ports.empty()) {
        int m = uniform(rng, 0, 2);
        for (int i = 0; i < m; ++i) g.top.add_edge(ids.edge(), pick(rng, ports), pick(rng, ports), edge_record(rng));
    }
    return g;
}

std::optional<Derived> rule_for(Rng& rng, const AhpGraph& host, const RuleShape& shape) {
    if (host.top.nodes().empty()) return std::nullopt;
    Derived d = copy_pattern(rng, host, shape);
    Rule& r = d.rule;
    IdAllocator ids = ids_above(r);
    r.rhs = random_rhs(rng, ids, shape, r);
    std::vector<PortId> rports;
    for (const auto& [p, pd] : r.rhs.top.ports()) rports.push_back(p);

    std::vector<PortId> wires, blackholes;
    for (const auto& [lp, hp] : d.lhs_to_host_ports) {
        if (!d.external.count(lp) && !coin(rng, shape.extra_arrow_p)) continue;
        double x = std::uniform_real_distribution<double>(0, 1)(rng);
        if (x < shape.wire_p) {
            wires.push_back(lp);
        } else if (x < shape.wire_p + shape.blackhole_p || rports.empty()) {
            blackholes.push_back(lp);
        } else {
            ArrowPort a{ArrowKind::Bridge, {lp}, {}};
            auto targets = rports;
            std::shuffle(targets.begin(), targets.end(), rng);
            int k = uniform(rng, 1, std::min<int>(shape.max_fanout, static_cast<int>(targets.size())));
            a.rhs_ports.assign(targets.begin(), targets.begin() + k);
            r.arrow.push_back(std::move(a));
        }
    }
    std::shuffle(wires.begin(), wires.end(), rng);
    for (std::size_t i = 0; i + 1 < wires.size(); i += 2)
        r.arrow.push_back(ArrowPort{ArrowKind::Wire, {wires[i], wires[i + 1]}, {}});
    if (wires.size() % 2) blackholes.push_back(wires.back());
    if (!blackholes.empty()) {
        if (coin(rng, 0.5)) {
            r.arrow.push_back(ArrowPort{ArrowKind::Blackhole, blackholes, {}});
        } else {
            for (PortId p : blackholes) r.arrow.push_back(ArrowPort{ArrowKind::Blackhole, {p}, {}});
        }
    }
    auto vars = value_vars(r);
    if (shape.conditions && !vars.empty() && coin(rng, 0.5)) {
        Expr x = Expr::var(pick(rng, vars));
        r.condition = coin(rng, 0.5) ? Expr::binary(Expr::Op::Ge, x, Expr{0.0})
                                     : Expr::binary(Expr::Op::Lt, Expr::binary(Expr::Op::Add, x, Expr{1.0}), Expr{100.0});
    }
    return d;
}

Rule loose_rule(Rng& rng, const RuleShape& shape) {
    Rule r;
    r.name = "loose";
    r.attribute_vars = {"K"};
    IdAllocator ids(1000);
    int n = uniform(rng, 1, 2);
    int next_var = 0;
    std::vector<PortId> ports;
    for (int i = 0; i < n; ++i) {
        const Kind& k = pick(rng, kinds());
        Record rec = Record::named(std::string{k.name});
        if (k.has_val) {
            Expr v = coin(rng, 0.6) ? Expr::var("X" + std::to_string(next_var++))
                                    : Expr{static_cast<double>(uniform(rng, 0, 3))};
            rec.set(coin(rng, shape.attr_var_p) ? "K" : "val", v);
        }
        NodeId id = r.lhs.top.add_node(ids.node(), rec);
        for (const auto& p : k.ports) ports.push_back(r.lhs.top.add_port(ids.port(), id, Record::named(p)));
        if (k.graph_var && coin(rng, 0.4)) r.lhs.set_ladder(id, GraphVar{k.graph_var + std::to_string(uniform(rng, 0, 1)), k.ports});
    }
    if (!ports.empty() && coin(rng, 0.5)) {
        Record er = coin(rng, 0.5) ? Record::named(std::string{"e"})
                                   : Record{{kName, Expr{std::string("d")}}, {kOriented, Expr{true}}};
        r.lhs.top.add_edge(ids.edge(), pick(rng, ports), pick(rng, ports), er);
    }
    for (PortId p : ports)
        if (coin(rng, 0.85)) r.arrow.push_back(ArrowPort{ArrowKind::Blackhole, {p}, {}});
    if (next_var > 0 && shape.conditions && coin(rng, 0.5))
        r.condition = Expr::binary(Expr::Op::Gt, Expr::var("X0"), Expr{1.0});
    return r;
}

} // namespace ahp::gen
