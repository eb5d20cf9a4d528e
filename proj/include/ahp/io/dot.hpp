#pragma once

#include <string>

#include "ahp/ahp_graph.hpp"

namespace ahp {

/// Graphviz text. Nodes are clusters of their ports; ladders nest as clusters
/// while their level is below `depth`, deeper ones collapse to a note badge.
std::string export_dot(const AhpGraph& g, int depth);

} // namespace ahp
