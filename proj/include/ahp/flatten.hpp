#pragma once

#include <map>

#include "ahp/ahp_graph.hpp"
#include "ahp/rule.hpp"

namespace ahp {

struct Flattened {
    PortGraph graph;
    /// Every port of a laddered node (any depth) -> the port that replaces it.
    std::map<PortId, PortId> redirect;
};

/// Replaces every laddered node by the flattening of its ladder and moves the
/// edges at its ports onto the same-named free ports of that ladder. Element
/// ids are preserved. Throws GraphError on graph variables.
Flattened flatten_with_redirect(const AhpGraph& g);
PortGraph flatten(const AhpGraph& g);

/// Flattens both sides of a rule; arrow edges follow the port redirection.
Rule flatten_rule(const Rule& r);

} // namespace ahp
