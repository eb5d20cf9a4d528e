#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ahp/violation.hpp"

namespace ahp {

/// Names available to records and rules. Base value types are fixed
/// (number, string, boolean) and are not declared here.
struct Signature {
    std::set<std::string> attributes;
    std::set<std::string> attribute_vars;
    std::set<std::string> value_vars;
    /// Graph variable -> declared interface (port names).
    std::map<std::string, std::vector<std::string>> graph_vars;

    bool is_attribute(const std::string& key) const;
    bool is_attribute_var(const std::string& key) const { return attribute_vars.count(key) != 0; }
    bool is_value_var(const std::string& name) const { return value_vars.count(name) != 0; }
    bool is_graph_var(const std::string& name) const { return graph_vars.count(name) != 0; }

    friend bool operator==(const Signature&, const Signature&) = default;
};

/// Pairwise disjointness of the name sets.
std::vector<Violation> validate_signature(const Signature& sig);

} // namespace ahp
