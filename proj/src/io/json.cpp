#include "ahp/io/json.hpp"

namespace ahp {

using nlohmann::json;

json to_json(const Expr& e) {
    if (e.is_var()) return json{{"var", e.var_name()}};
    if (!e.is_literal()) return json{{"expr", to_string(e)}};
    const Value& v = e.literal();
    if (auto d = std::get_if<double>(&v)) return *d;
    if (auto s = std::get_if<std::string>(&v)) return *s;
    return std::get<bool>(v);
}

json to_json(const Record& r) {
    json out = json::object();
    for (const auto& [k, v] : r.pairs()) out[k] = to_json(v);
    return out;
}

namespace {

void fill(const AhpGraph& g, json& out, json& records) {
    for (const auto& [nid, n] : g.top.nodes()) {
        json ports = json::array();
        for (PortId p : n.ports) ports.push_back(p.value);
        out["nodes"].push_back({{"id", nid.value}, {"ports", ports}});
        records[to_string(nid)] = to_json(n.record);
    }
    for (const auto& [pid, p] : g.top.ports()) {
        out["ports"].push_back({{"id", pid.value}, {"node", p.node.value}});
        records[to_string(pid)] = to_json(p.record);
    }
    for (const auto& [eid, e] : g.top.edges()) {
        out["edges"].push_back({{"id", eid.value}, {"source", e.source.value}, {"target", e.target.value}});
        records[to_string(eid)] = to_json(e.record);
    }
    for (const auto& [nid, l] : g.ladders) {
        if (auto v = std::get_if<GraphVar>(&l)) {
            out["ladders"][to_string(nid)] = {{"var", v->name}, {"interface", v->interface}};
        } else {
            json sub = {{"nodes", json::array()}, {"ports", json::array()}, {"edges", json::array()},
                        {"ladders", json::object()}};
            fill(*std::get<LadderGraph>(l), sub, records);
            out["ladders"][to_string(nid)] = sub;
        }
    }
}

template <class Map>
json id_map(const Map& m) {
    json out = json::object();
    for (const auto& [a, b] : m) out[std::to_string(a.value)] = b.value;
    return out;
}

} // namespace

json to_json(const AhpGraph& g) {
    json out = {{"nodes", json::array()}, {"ports", json::array()}, {"edges", json::array()},
                {"ladders", json::object()}};
    json records = json::object();
    fill(g, out, records);
    out["records"] = records;
    return out;
}

json to_json(const Match& m, const AhpGraph& host) {
    const auto& mo = m.morphism;
    json values = json::object();
    for (const auto& [k, v] : mo.bindings.values) values[k] = to_json(Expr{v});
    json graphs = json::object();
    for (const auto& [name, w] : mo.bindings.graphs) {
        std::string owner;
        for_each_component(host, [&](const AhpGraph& c, int) {
            for (const auto& [n, l] : c.ladders)
                if (auto lg = std::get_if<LadderGraph>(&l); lg && *lg == w) owner = to_string(n);
        });
        graphs[name] = owner;
    }
    return {{"nodes", id_map(mo.nodes)},
            {"ports", id_map(mo.ports)},
            {"edges", id_map(mo.edges)},
            {"bindings", {{"values", values}, {"attributes", mo.bindings.attributes}, {"graphs", graphs}}}};
}

json to_json(const RewireEntry& r) {
    json from = json::array();
    for (PortId p : r.from) from.push_back(p.value);
    json created = json::array();
    for (EdgeId e : r.created) created.push_back(e.value);
    return {{"edge", r.edge.value}, {"kind", to_string(r.kind)}, {"from", from}, {"created", created}};
}

} // namespace ahp
