#pragma once

#include <json.hpp>

#include "ahp/match.hpp"
#include "ahp/rewrite.hpp"

namespace ahp {

// Machine-readable mirror. Graph objects use the keys nodes, ports, edges,
// ladders and records; records are keyed "n<id>", "p<id>", "e<id>".
// Variables appear as {"var": X}, compound expressions as {"expr": text}.

nlohmann::json to_json(const Expr& e);
nlohmann::json to_json(const Record& r);
nlohmann::json to_json(const AhpGraph& g);
/// Graph bindings name the host node whose ladder was bound.
nlohmann::json to_json(const Match& m, const AhpGraph& host);
nlohmann::json to_json(const RewireEntry& r);

} // namespace ahp
