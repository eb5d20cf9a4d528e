#include "ahp/port_graph.hpp"

#include <algorithm>

#include "record_checks.hpp"

namespace ahp {

bool EdgeData::oriented() const {
    auto o = record.get(kOriented);
    if (!o || !o->is_literal()) return false;
    auto b = std::get_if<bool>(&o->literal());
    return b && *b;
}

NodeId PortGraph::add_node(NodeId id, Record record) {
    if (has(id)) throw GraphError("duplicate node id " + to_string(id));
    nodes_.emplace(id, NodeData{std::move(record), {}});
    return id;
}

PortId PortGraph::add_port(PortId id, NodeId node, Record record) {
    if (has(id)) throw GraphError("duplicate port id " + to_string(id));
    auto it = nodes_.find(node);
    if (it == nodes_.end()) throw GraphError("port " + to_string(id) + " attached to unknown node " + to_string(node));
    ports_.emplace(id, PortData{std::move(record), node, {}});
    it->second.ports.push_back(id);
    return id;
}

EdgeId PortGraph::add_edge(EdgeId id, PortId source, PortId target, Record record) {
    if (has(id)) throw GraphError("duplicate edge id " + to_string(id));
    auto s = ports_.find(source);
    auto t = ports_.find(target);
    if (s == ports_.end() || t == ports_.end())
        throw GraphError("edge " + to_string(id) + " connects an unknown port");
    edges_.emplace(id, EdgeData{std::move(record), source, target});
    s->second.edges.insert(id);
    t->second.edges.insert(id);
    return id;
}

void PortGraph::remove_edge(EdgeId id) {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw GraphError("no edge " + to_string(id));
    ports_.at(it->second.source).edges.erase(id);
    ports_.at(it->second.target).edges.erase(id);
    edges_.erase(it);
}

void PortGraph::remove_node(NodeId id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw GraphError("no node " + to_string(id));
    for (PortId p : it->second.ports) {
        auto incident = ports_.at(p).edges;
        for (EdgeId e : incident)
            if (has(e)) remove_edge(e);
        ports_.erase(p);
    }
    nodes_.erase(it);
}

void PortGraph::set_record(NodeId id, Record r) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw GraphError("no node " + to_string(id));
    it->second.record = std::move(r);
}

void PortGraph::set_record(PortId id, Record r) {
    auto it = ports_.find(id);
    if (it == ports_.end()) throw GraphError("no port " + to_string(id));
    it->second.record = std::move(r);
}

void PortGraph::set_record(EdgeId id, Record r) {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw GraphError("no edge " + to_string(id));
    it->second.record = std::move(r);
}

const NodeData& PortGraph::node(NodeId id) const {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw GraphError("no node " + to_string(id));
    return it->second;
}

const PortData& PortGraph::port(PortId id) const {
    auto it = ports_.find(id);
    if (it == ports_.end()) throw GraphError("no port " + to_string(id));
    return it->second;
}

const EdgeData& PortGraph::edge(EdgeId id) const {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw GraphError("no edge " + to_string(id));
    return it->second;
}

std::vector<std::string> PortGraph::node_interface(NodeId id) const {
    std::vector<std::string> names;
    for (PortId p : node(id).ports) names.push_back(port(p).record.concrete_name().value_or("?"));
    return names;
}

std::optional<PortId> PortGraph::find_port(NodeId n, const std::string& name) const {
    for (PortId p : node(n).ports)
        if (port(p).record.concrete_name() == name) return p;
    return std::nullopt;
}

PortId PortGraph::opposite(EdgeId e, PortId p) const {
    const auto& ed = edge(e);
    return ed.source == p ? ed.target : ed.source;
}

std::vector<PortId> interface(const PortGraph& g) {
    std::vector<std::pair<std::string, PortId>> free;
    for (const auto& [id, p] : g.ports())
        if (p.edges.empty()) free.emplace_back(p.record.concrete_name().value_or(""), id);
    std::sort(free.begin(), free.end());
    std::vector<PortId> out;
    for (const auto& [name, id] : free) out.push_back(id);
    return out;
}

std::uint64_t max_id(const PortGraph& g) {
    std::uint64_t m = 0;
    if (!g.nodes().empty()) m = std::max(m, g.nodes().rbegin()->first.value);
    if (!g.ports().empty()) m = std::max(m, g.ports().rbegin()->first.value);
    if (!g.edges().empty()) m = std::max(m, g.edges().rbegin()->first.value);
    return m;
}

std::vector<Violation> validate_port_graph(const PortGraph& g, const Signature& sig, bool allow_vars) {
    std::vector<Violation> out;
    detail::GraphChecker checker(sig, allow_vars, out);
    checker.check_graph(g, "graph");
    return out;
}

namespace detail {

void GraphChecker::check_record(const std::string& kind, const std::string& label, const Record& r) {
    auto name = r.name();
    if (!name) {
        out_.push_back({"missing-name", label + " has no Name attribute"});
    } else if (name->is_literal()) {
        if (!std::holds_alternative<std::string>(name->literal()))
            out_.push_back({"name-type", label + " has a non-string Name"});
    } else if (!name->is_var()) {
        out_.push_back({"name-expression", label + " has a compound expression as Name"});
    }
    for (const auto& [key, value] : r.pairs()) {
        if (key == kInterface || key == kLadder) {
            out_.push_back({"reserved-attribute", label + " stores the derived attribute " + key});
            continue;
        }
        if (sig_.is_attribute_var(key)) {
            if (!allow_vars_)
                out_.push_back({"variable-in-subject", label + " uses attribute variable " + key + " as a key"});
        } else if (!sig_.is_attribute(key)) {
            out_.push_back({"unknown-attribute", label + " uses undeclared attribute " + key});
        }
        for (const auto& v : value.vars()) {
            if (!sig_.is_value_var(v))
                out_.push_back({"undeclared-variable", label + "." + key + " references undeclared variable " + v});
            else if (!allow_vars_)
                out_.push_back({"variable-in-subject", label + "." + key + " contains variable " + v});
        }
        if (!allow_vars_ && !value.is_literal() && !value.is_var())
            out_.push_back({"unevaluated-expression", label + "." + key + " holds an expression"});
    }
    if (kind == "edge") {
        if (auto o = r.get(kOriented); o && o->is_literal() && !std::holds_alternative<bool>(o->literal()))
            out_.push_back({"oriented-type", label + ".Oriented is not a boolean"});
    }
    check_schema(kind, label, r);
}

void GraphChecker::check_schema(const std::string& kind, const std::string& label, const Record& r) {
    auto name = r.concrete_name();
    if (!name) return;
    for (const auto& [key, v] : r.pairs())
        if (sig_.is_attribute_var(key)) return;
    auto keys = atts(r);
    auto& seen = schema_[kind];
    auto [it, fresh] = seen.emplace(*name, std::make_pair(keys, label));
    if (!fresh && it->second.first != keys)
        out_.push_back({"schema-mismatch", label + " and " + it->second.second + " share Name '" + *name +
                                               "' but have different attribute sets"});
}

void GraphChecker::check_graph(const PortGraph& g, const std::string& where) {
    std::map<PortId, int> owners;
    for (const auto& [nid, n] : g.nodes()) {
        const auto label = where + " node " + to_string(nid);
        check_record("node", label, n.record);
        std::set<std::string> port_names;
        for (PortId p : n.ports) {
            ++owners[p];
            if (!g.has(p)) {
                out_.push_back({"attach-not-total", label + " lists missing port " + to_string(p)});
                continue;
            }
            if (g.port(p).node != nid)
                out_.push_back({"attach-mismatch", label + " lists port " + to_string(p) + " attached elsewhere"});
            if (auto pn = g.port(p).record.concrete_name(); pn && !port_names.insert(*pn).second)
                out_.push_back({"duplicate-port-name", label + " has two ports named '" + *pn + "'"});
        }
        if (auto name = n.record.concrete_name()) {
            auto iface = g.node_interface(nid);
            auto [it, fresh] = interfaces_.emplace(*name, std::make_pair(iface, label));
            if (!fresh && it->second.first != iface)
                out_.push_back({"interface-mismatch", label + " and " + it->second.second + " share Name '" + *name +
                                                          "' but have different Interfaces"});
        }
    }
    for (const auto& [pid, p] : g.ports()) {
        const auto label = where + " port " + to_string(pid);
        if (!g.has(p.node)) out_.push_back({"attach-not-total", label + " is attached to a missing node"});
        if (owners[pid] != 1) out_.push_back({"attach-mismatch", label + " is not listed by exactly one node"});
        check_record("port", label, p.record);
        if (!p.record.concrete_name() && p.record.name())
            out_.push_back({"port-name-not-concrete", label + " must have a concrete string Name"});
        for (EdgeId e : p.edges) {
            if (!g.has(e) || (g.edge(e).source != pid && g.edge(e).target != pid))
                out_.push_back({"incidence-mismatch", label + " records a stale edge " + to_string(e)});
        }
    }
    for (const auto& [eid, e] : g.edges()) {
        const auto label = where + " edge " + to_string(eid);
        if (!g.has(e.source) || !g.has(e.target)) {
            out_.push_back({"connect-not-total", label + " has an endpoint outside the graph"});
            continue;
        }
        if (!g.port(e.source).edges.count(eid) || !g.port(e.target).edges.count(eid))
            out_.push_back({"incidence-mismatch", label + " missing from its ports' incidence"});
        check_record("edge", label, e.record);
    }
}

} // namespace detail

} // namespace ahp
