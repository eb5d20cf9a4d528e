#include "ahp/io/dot.hpp"

#include <sstream>

namespace ahp {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out;
}

std::string node_label(const Record& r, NodeId id) {
    std::string name = r.concrete_name().value_or("?");
    std::string extra;
    for (const auto& [k, v] : r.pairs())
        if (k != kName) extra += (extra.empty() ? "" : ", ") + k + "=" + to_string(v);
    std::string out = name + " (" + to_string(id) + ")";
    if (!extra.empty()) out += "\n" + extra;
    return out;
}

class DotWriter {
public:
    DotWriter(std::ostringstream& os, int depth) : os_(os), depth_(depth) {}

    void graph(const AhpGraph& g, int level, int indent) {
        const std::string pad(indent, ' ');
        for (const auto& [nid, n] : g.top.nodes()) {
            os_ << pad << "subgraph cluster_" << to_string(nid) << " {\n";
            os_ << pad << "  label=\"" << escape(node_label(n.record, nid)) << "\";\n";
            if (n.ports.empty() && !g.ladder(nid)) os_ << pad << "  " << to_string(nid) << " [shape=point, style=invis];\n";
            for (PortId p : n.ports)
                os_ << pad << "  " << to_string(p) << " [label=\""
                    << escape(g.top.port(p).record.concrete_name().value_or("?")) << "\"];\n";
            if (const Ladder* l = g.ladder(nid)) ladder(nid, *l, level, indent + 2);
            os_ << pad << "}\n";
        }
        for (const auto& [eid, e] : g.top.edges()) {
            os_ << pad << to_string(e.source) << " -- " << to_string(e.target) << " [label=\""
                << escape(e.record.concrete_name().value_or("")) << "\"";
            if (e.oriented()) os_ << ", dir=forward";
            os_ << "];\n";
        }
    }

private:
    void ladder(NodeId nid, const Ladder& l, int level, int indent) {
        const std::string pad(indent, ' ');
        if (auto v = std::get_if<GraphVar>(&l)) {
            os_ << pad << "ladder_" << to_string(nid) << " [shape=note, label=\"ladder: " << escape(v->name)
                << "\"];\n";
            return;
        }
        const auto& w = *std::get<LadderGraph>(l);
        if (level >= depth_) {
            os_ << pad << "ladder_" << to_string(nid) << " [shape=note, label=\"ladder: " << w.top.nodes().size()
                << " nodes, level " << ahp::level(w) << "\"];\n";
            return;
        }
        os_ << pad << "subgraph cluster_ladder_" << to_string(nid) << " {\n";
        os_ << pad << "  label=\"ladder\";\n" << pad << "  style=dashed;\n";
        graph(w, level + 1, indent + 2);
        os_ << pad << "}\n";
    }

    std::ostringstream& os_;
    int depth_;
};

} // namespace

std::string export_dot(const AhpGraph& g, int depth) {
    std::ostringstream os;
    os << "graph ahp {\n  compound=true;\n  node [shape=circle, fontsize=10];\n";
    DotWriter(os, depth).graph(g, 0, 2);
    os << "}\n";
    return os.str();
}

} // namespace ahp
