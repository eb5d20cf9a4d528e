#pragma once

#include "ahp/ahp_graph.hpp"

namespace ahp {

/// Structure-and-record isomorphism, ids ignored. Ports are matched in
/// attachment order, edge multisets must agree (orientation included), and
/// ladders are compared recursively; graph variables must be identical.
bool isomorphic(const PortGraph& a, const PortGraph& b);
bool isomorphic(const AhpGraph& a, const AhpGraph& b);

} // namespace ahp
