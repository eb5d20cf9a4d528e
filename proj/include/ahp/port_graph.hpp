#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ahp/ids.hpp"
#include "ahp/record.hpp"
#include "ahp/signature.hpp"
#include "ahp/violation.hpp"

namespace ahp {

class GraphError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NodeData {
    Record record;
    std::vector<PortId> ports;  // attachment order; defines the Interface

    friend bool operator==(const NodeData&, const NodeData&) = default;
};

struct PortData {
    Record record;
    NodeId node;
    std::set<EdgeId> edges;  // incidence index

    friend bool operator==(const PortData&, const PortData&) = default;
};

struct EdgeData {
    Record record;
    PortId source;
    PortId target;

    bool oriented() const;
    friend bool operator==(const EdgeData&, const EdgeData&) = default;
};

/// Flat attributed port multigraph. Edges attach to ports, ports to nodes.
/// The mutators keep Connect/Attach total: removing a node removes its ports
/// and every incident edge.
class PortGraph {
public:
    NodeId add_node(NodeId id, Record record);
    PortId add_port(PortId id, NodeId node, Record record);
    EdgeId add_edge(EdgeId id, PortId source, PortId target, Record record);

    void remove_edge(EdgeId id);
    void remove_node(NodeId id);
    void set_record(NodeId id, Record r);
    void set_record(PortId id, Record r);
    void set_record(EdgeId id, Record r);

    bool has(NodeId id) const { return nodes_.count(id) != 0; }
    bool has(PortId id) const { return ports_.count(id) != 0; }
    bool has(EdgeId id) const { return edges_.count(id) != 0; }

    const NodeData& node(NodeId id) const;
    const PortData& port(PortId id) const;
    const EdgeData& edge(EdgeId id) const;

    const std::map<NodeId, NodeData>& nodes() const { return nodes_; }
    const std::map<PortId, PortData>& ports() const { return ports_; }
    const std::map<EdgeId, EdgeData>& edges() const { return edges_; }

    std::size_t element_count() const { return nodes_.size() + ports_.size() + edges_.size(); }

    /// Names of a node's ports in attachment order (the derived Interface).
    std::vector<std::string> node_interface(NodeId id) const;
    /// Port of `node` whose Name is `name`, if any.
    std::optional<PortId> find_port(NodeId node, const std::string& name) const;
    /// The other end of `edge` seen from `port`.
    PortId opposite(EdgeId edge, PortId port) const;

    friend bool operator==(const PortGraph&, const PortGraph&) = default;

private:
    std::map<NodeId, NodeData> nodes_;
    std::map<PortId, PortData> ports_;
    std::map<EdgeId, EdgeData> edges_;
};

/// Free ports (no incident edge), ordered by port Name then id.
std::vector<PortId> interface(const PortGraph& g);

/// All structural and record invariants of a flat port graph. With
/// allow_vars=false, any variable or unevaluated expression is a violation.
std::vector<Violation> validate_port_graph(const PortGraph& g, const Signature& sig, bool allow_vars);

/// Largest id of any element (0 for an empty graph).
std::uint64_t max_id(const PortGraph& g);

} // namespace ahp
