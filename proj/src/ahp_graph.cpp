#include "ahp/ahp_graph.hpp"

#include <algorithm>
#include <set>

#include "record_checks.hpp"

namespace ahp {

const Ladder* AhpGraph::ladder(NodeId n) const {
    auto it = ladders.find(n);
    return it == ladders.end() ? nullptr : &it->second;
}

bool operator==(const AhpGraph& a, const AhpGraph& b) {
    if (!(a.top == b.top) || a.ladders.size() != b.ladders.size()) return false;
    for (auto ia = a.ladders.begin(), ib = b.ladders.begin(); ia != a.ladders.end(); ++ia, ++ib) {
        if (ia->first != ib->first || ia->second.index() != ib->second.index()) return false;
        if (auto va = std::get_if<GraphVar>(&ia->second)) {
            if (!(*va == std::get<GraphVar>(ib->second))) return false;
        } else {
            const auto& ga = std::get<LadderGraph>(ia->second);
            const auto& gb = std::get<LadderGraph>(ib->second);
            if (ga != gb && !(*ga == *gb)) return false;
        }
    }
    return true;
}

int level(const AhpGraph& g) {
    int deepest = -1;
    for (const auto& [n, l] : g.ladders) {
        int sub = 0;
        if (auto w = std::get_if<LadderGraph>(&l)) sub = level(**w);
        deepest = std::max(deepest, sub);
    }
    return deepest + 1;
}

std::uint64_t max_id(const AhpGraph& g) {
    std::uint64_t m = 0;
    for_each_component(g, [&](const AhpGraph& c, int) { m = std::max(m, max_id(c.top)); });
    return m;
}

std::size_t element_count(const AhpGraph& g) {
    std::size_t n = 0;
    for_each_component(g, [&](const AhpGraph& c, int) { n += c.top.element_count(); });
    return n;
}

bool has_graph_vars(const AhpGraph& g) {
    bool found = false;
    for_each_component(g, [&](const AhpGraph& c, int) {
        for (const auto& [n, l] : c.ladders)
            if (std::holds_alternative<GraphVar>(l)) found = true;
    });
    return found;
}

namespace {

class AhpValidator {
public:
    AhpValidator(const Signature& sig, bool allow_vars, std::vector<Violation>& out)
        : sig_(sig), allow_vars_(allow_vars), out_(out), checker_(sig, allow_vars, out) {}

    void visit(const AhpGraph& g, const std::string& where) {
        checker_.check_graph(g.top, where);
        for (const auto& [id, n] : g.top.nodes()) claim(id.value, nodes_, where + " node " + to_string(id));
        for (const auto& [id, p] : g.top.ports()) claim(id.value, ports_, where + " port " + to_string(id));
        for (const auto& [id, e] : g.top.edges()) claim(id.value, edges_, where + " edge " + to_string(id));

        for (const auto& [nid, l] : g.ladders) {
            const auto label = where + " node " + to_string(nid);
            if (!g.top.has(nid)) {
                out_.push_back({"ladder-dangling", where + " has a ladder for missing node " + to_string(nid)});
                continue;
            }
            if (auto v = std::get_if<GraphVar>(&l)) {
                check_variable(*v, g.top, nid, label);
                continue;
            }
            const auto& w = std::get<LadderGraph>(l);
            if (!w) {
                out_.push_back({"ladder-null", label + " has an empty ladder pointer"});
                continue;
            }
            if (!instances_.insert(w.get()).second)
                out_.push_back({"ladder-not-injective", label + " shares its ladder graph with another node"});
            check_interface(g.top, nid, *w, label);
            visit(*w, label + " ladder");
        }
    }

private:
    void claim(std::uint64_t id, std::map<std::uint64_t, std::string>& seen, const std::string& label) {
        auto [it, fresh] = seen.emplace(id, label);
        if (!fresh) out_.push_back({"ids-not-disjoint", label + " reuses the id of " + it->second});
    }

    void check_variable(const GraphVar& v, const PortGraph& top, NodeId nid, const std::string& label) {
        if (!allow_vars_)
            out_.push_back({"graph-variable-in-subject", label + " has graph variable " + v.name + " as ladder"});
        auto decl = sig_.graph_vars.find(v.name);
        if (decl == sig_.graph_vars.end()) {
            out_.push_back({"undeclared-variable", label + " uses undeclared graph variable " + v.name});
        } else if (decl->second != v.interface) {
            out_.push_back({"graph-var-interface", label + " carries graph variable " + v.name +
                                                       " with an interface differing from its declaration"});
        }
        auto names = top.node_interface(nid);
        auto declared = v.interface;
        if (names.size() != declared.size()) {
            out_.push_back({"interface-arity", label + " has " + std::to_string(names.size()) +
                                                   " ports but graph variable " + v.name + " declares " +
                                                   std::to_string(declared.size())});
            return;
        }
        std::sort(names.begin(), names.end());
        std::sort(declared.begin(), declared.end());
        if (names != declared)
            out_.push_back({"interface-names", label + " port names differ from graph variable " + v.name});
    }

    void check_interface(const PortGraph& top, NodeId nid, const AhpGraph& w, const std::string& label) {
        const auto& ports = top.node(nid).ports;
        auto free = interface(w.top);
        if (free.size() != ports.size()) {
            out_.push_back({"interface-arity", label + " has " + std::to_string(ports.size()) +
                                                   " ports but its ladder has " + std::to_string(free.size()) +
                                                   " free ports"});
            return;
        }
        std::map<std::string, PortId> by_name;
        for (PortId q : free) {
            auto nm = w.top.port(q).record.concrete_name().value_or("");
            if (!by_name.emplace(nm, q).second)
                out_.push_back({"interface-names", label + " ladder has two free ports named '" + nm + "'"});
        }
        for (PortId p : ports) {
            const auto& rec = top.port(p).record;
            auto it = by_name.find(rec.concrete_name().value_or(""));
            if (it == by_name.end()) {
                out_.push_back({"interface-names", label + " port '" + rec.concrete_name().value_or("") +
                                                       "' has no same-named free port in its ladder"});
            } else if (!(w.top.port(it->second).record == rec)) {
                out_.push_back({"interface-records", label + " port '" + it->first +
                                                         "' differs in record from its ladder counterpart"});
            }
        }
    }

    const Signature& sig_;
    bool allow_vars_;
    std::vector<Violation>& out_;
    detail::GraphChecker checker_;
    std::map<std::uint64_t, std::string> nodes_, ports_, edges_;
    std::set<const AhpGraph*> instances_;
};

} // namespace

std::vector<Violation> validate_ahp(const AhpGraph& g, const Signature& sig, bool allow_vars) {
    std::vector<Violation> out;
    AhpValidator v(sig, allow_vars, out);
    v.visit(g, "graph");
    return out;
}

AhpGraph renumber(const AhpGraph& g, IdAllocator& ids, Renumbering* map) {
    Renumbering local;
    Renumbering& m = map ? *map : local;
    AhpGraph out;
    for (const auto& [nid, n] : g.top.nodes()) {
        NodeId fresh = out.top.add_node(ids.node(), n.record);
        m.nodes[nid] = fresh;
        for (PortId p : n.ports) m.ports[p] = out.top.add_port(ids.port(), fresh, g.top.port(p).record);
    }
    for (const auto& [eid, e] : g.top.edges())
        m.edges[eid] = out.top.add_edge(ids.edge(), m.ports.at(e.source), m.ports.at(e.target), e.record);
    for (const auto& [nid, l] : g.ladders) {
        if (auto w = std::get_if<LadderGraph>(&l))
            out.set_ladder(m.nodes.at(nid), renumber(**w, ids, &m));
        else
            out.ladders[m.nodes.at(nid)] = l;
    }
    return out;
}

} // namespace ahp
