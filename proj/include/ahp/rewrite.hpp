#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ahp/match.hpp"

namespace ahp {

class RewriteError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// What happened to one external edge of the match image.
struct RewireEntry {
    EdgeId edge;                   // the deleted host edge
    ArrowKind kind;                // arrow kind that handled it
    std::vector<PortId> from;      // its endpoints inside the image
    std::vector<EdgeId> created;   // new edges standing in for it
};

struct RewriteStep {
    std::string rule;
    Match match;
    AhpGraph before;
    AhpGraph after;
    std::vector<RewireEntry> rewiring;
};

/// Copy of rhs with fresh ids, attribute variables replaced by their keys,
/// value expressions evaluated and graph variables replaced by renumbered
/// copies of the bound ladders. Throws RewriteError on anything unbound.
AhpGraph instantiate_rhs(const AhpGraph& rhs, const Bindings& b, const std::set<std::string>& attribute_vars,
                         IdAllocator& ids, Renumbering* map = nullptr);

/// One rewrite step. The match is re-verified first; RewriteError if stale.
AhpGraph apply(const Rule& r, const AhpGraph& host, const Match& m, std::vector<RewireEntry>* log = nullptr);

RewriteStep rewrite_step(const Rule& r, const AhpGraph& host, const Match& m);

/// flatten(apply(r, host, m)) is isomorphic to applying flatten_rule(r) to
/// flatten(host) at the induced flat match. Only for graph-variable-free
/// rules and hosts. `why` explains a failure.
bool check_flatten_commutes(const Rule& r, const AhpGraph& host, const Match& m, std::string* why = nullptr);

} // namespace ahp
