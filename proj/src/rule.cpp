#include "ahp/rule.hpp"

#include <algorithm>

namespace ahp {

const char* to_string(ArrowKind k) {
    switch (k) {
    case ArrowKind::Bridge: return "bridge";
    case ArrowKind::Wire: return "wire";
    default: return "blackhole";
    }
}

namespace {

constexpr const char* kArrowName = "__arrow__";

template <class F>
void for_each_record(const AhpGraph& g, F&& f) {
    for_each_component(g, [&](const AhpGraph& c, int) {
        for (const auto& [id, n] : c.top.nodes()) f(n.record);
        for (const auto& [id, p] : c.top.ports()) f(p.record);
        for (const auto& [id, e] : c.top.edges()) f(e.record);
    });
}

// Owning component of each port: true when the port sits in the top level.
bool in_nested_ladder(const AhpGraph& g, PortId p) {
    bool found = false;
    for_each_component(g, [&](const AhpGraph& c, int depth) {
        if (depth > 0 && c.top.has(p)) found = true;
    });
    return found;
}

std::set<std::uint64_t> all_ids(const AhpGraph& g) {
    std::set<std::uint64_t> ids;
    for_each_component(g, [&](const AhpGraph& c, int) {
        for (const auto& [id, n] : c.top.nodes()) ids.insert(id.value);
        for (const auto& [id, p] : c.top.ports()) ids.insert(id.value);
        for (const auto& [id, e] : c.top.edges()) ids.insert(id.value);
    });
    return ids;
}

} // namespace

VariableSet variables_of(const AhpGraph& g, const std::set<std::string>& attribute_vars) {
    VariableSet out;
    for_each_record(g, [&](const Record& r) {
        for (const auto& [k, v] : r.pairs()) {
            if (attribute_vars.count(k)) out.attributes.insert(k);
            v.collect_vars(out.values);
        }
    });
    for_each_component(g, [&](const AhpGraph& c, int) {
        for (const auto& [n, l] : c.ladders)
            if (auto v = std::get_if<GraphVar>(&l)) out.graphs.insert(v->name);
    });
    return out;
}

AhpGraph rule_as_graph(const Rule& r) {
    AhpGraph g = r.lhs;
    for (const auto& [id, n] : r.rhs.top.nodes()) {
        g.top.add_node(id, n.record);
        for (PortId p : n.ports) g.top.add_port(p, id, r.rhs.top.port(p).record);
    }
    for (const auto& [id, e] : r.rhs.top.edges()) g.top.add_edge(id, e.source, e.target, e.record);
    for (const auto& [n, l] : r.rhs.ladders) g.ladders[n] = l;

    IdAllocator ids(std::max(max_id(r.lhs), max_id(r.rhs)));
    NodeId arrow = g.top.add_node(ids.node(), Record::named(std::string{kArrowName}));
    for (std::size_t i = 0; i < r.arrow.size(); ++i) {
        const auto& a = r.arrow[i];
        Record pr = Record::named("arrow" + std::to_string(i));
        pr.set(kType, Expr{std::string{to_string(a.kind)}});
        PortId ap = g.top.add_port(ids.port(), arrow, pr);
        for (PortId t : a.lhs_ports)
            if (g.top.has(t)) g.top.add_edge(ids.edge(), ap, t, Record::named(std::string{kArrowName}));
        for (PortId t : a.rhs_ports)
            if (g.top.has(t)) g.top.add_edge(ids.edge(), ap, t, Record::named(std::string{kArrowName}));
    }
    return g;
}

std::map<PortId, std::size_t> arrow_index(const Rule& r) {
    std::map<PortId, std::size_t> out;
    for (std::size_t i = 0; i < r.arrow.size(); ++i)
        for (PortId p : r.arrow[i].lhs_ports) out.emplace(p, i);
    return out;
}

std::vector<Violation> validate_rule(const Rule& r, const Signature& sig) {
    std::vector<Violation> out;
    const std::string who = "rule '" + r.name + "'";

    auto lids = all_ids(r.lhs);
    auto rids = all_ids(r.rhs);
    std::vector<std::uint64_t> shared;
    std::set_intersection(lids.begin(), lids.end(), rids.begin(), rids.end(), std::back_inserter(shared));
    if (!shared.empty()) {
        out.push_back({"ids-not-disjoint", who + ": lhs and rhs share id " + std::to_string(shared.front())});
    } else {
        auto vs = validate_ahp(rule_as_graph(r), sig, true);
        out.insert(out.end(), vs.begin(), vs.end());
    }

    std::map<PortId, int> lhs_uses;
    for (std::size_t i = 0; i < r.arrow.size(); ++i) {
        const auto& a = r.arrow[i];
        const auto label = who + " arrow port " + std::to_string(i) + " (" + to_string(a.kind) + ")";
        const auto nl = a.lhs_ports.size();
        const auto nr = a.rhs_ports.size();
        switch (a.kind) {
        case ArrowKind::Bridge:
            if (nl != 1 || nr < 1)
                out.push_back({"bridge-arity", label + " needs one lhs edge and at least one rhs edge"});
            break;
        case ArrowKind::Blackhole:
            if (nl < 1 || nr != 0)
                out.push_back({"blackhole-arity", label + " needs at least one lhs edge and no rhs edge"});
            break;
        case ArrowKind::Wire:
            if (nl != 2 || nr != 0)
                out.push_back({"wire-arity", label + " needs exactly two lhs edges and no rhs edge"});
            break;
        }
        for (PortId p : a.lhs_ports) {
            if (++lhs_uses[p] == 2)
                out.push_back({"arrow-port-shared", label + ": lhs port " + to_string(p) +
                                                        " is the target of more than one arrow edge"});
            if (!r.lhs.top.has(p))
                out.push_back({in_nested_ladder(r.lhs, p) ? "cross-level-arrow" : "arrow-unknown-port",
                               label + ": lhs port " + to_string(p) + " is not a top-level port of the lhs"});
        }
        for (PortId p : a.rhs_ports) {
            if (!r.rhs.top.has(p))
                out.push_back({in_nested_ladder(r.rhs, p) ? "cross-level-arrow" : "arrow-unknown-port",
                               label + ": rhs port " + to_string(p) + " is not a top-level port of the rhs"});
        }
    }

    auto lv = variables_of(r.lhs, r.attribute_vars);
    auto rv = variables_of(r.rhs, r.attribute_vars);
    auto missing = [&](const std::set<std::string>& have, const std::set<std::string>& need, const char* what) {
        for (const auto& v : need)
            if (!have.count(v))
                out.push_back({"unbound-rhs-variable", who + ": " + what + " " + v + " occurs in rhs but not in lhs"});
    };
    missing(lv.values, rv.values, "value variable");
    missing(lv.attributes, rv.attributes, "attribute variable");
    missing(lv.graphs, rv.graphs, "graph variable");
    for (const auto& v : r.condition.vars())
        if (!lv.values.count(v))
            out.push_back({"unbound-condition-variable", who + ": condition uses " + v + " which lhs never binds"});

    for_each_record(r.lhs, [&](const Record& rec) {
        for (const auto& [k, v] : rec.pairs())
            if (!v.is_literal() && !v.is_var())
                out.push_back({"lhs-expression", who + ": lhs attribute " + k + " holds a compound expression"});
    });

    // A graph variable carrier in rhs must present the same port records as
    // the lhs node that bound it, or the instantiated ladder would not fit.
    std::map<std::string, std::vector<Record>> lhs_carriers;
    for_each_component(r.lhs, [&](const AhpGraph& c, int) {
        for (const auto& [n, l] : c.ladders)
            if (auto v = std::get_if<GraphVar>(&l)) {
                std::vector<Record> recs;
                for (PortId p : c.top.node(n).ports) recs.push_back(c.top.port(p).record);
                std::sort(recs.begin(), recs.end(), [](const Record& a, const Record& b) {
                    return a.concrete_name() < b.concrete_name();
                });
                lhs_carriers.emplace(v->name, recs);
            }
    });
    for_each_component(r.rhs, [&](const AhpGraph& c, int) {
        for (const auto& [n, l] : c.ladders) {
            auto v = std::get_if<GraphVar>(&l);
            if (!v) continue;
            auto it = lhs_carriers.find(v->name);
            if (it == lhs_carriers.end()) continue;
            std::vector<Record> recs;
            for (PortId p : c.top.node(n).ports) recs.push_back(c.top.port(p).record);
            std::sort(recs.begin(), recs.end(), [](const Record& a, const Record& b) {
                return a.concrete_name() < b.concrete_name();
            });
            if (recs != it->second)
                out.push_back({"graph-var-ports", who + ": rhs node " + to_string(n) + " carries " + v->name +
                                                      " with port records unlike its lhs carrier"});
        }
    });
    return out;
}

bool is_simple(const Rule& r) {
    return std::all_of(r.arrow.begin(), r.arrow.end(), [](const ArrowPort& a) {
        if (a.kind == ArrowKind::Wire) return false;
        return a.kind != ArrowKind::Bridge || a.rhs_ports.size() == 1;
    });
}

} // namespace ahp
