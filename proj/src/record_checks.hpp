#pragma once

// Validation shared by the flat and hierarchical validators. Schema facts
// (Name -> key set, Name -> Interface) accumulate across every component
// graph handed to one checker.

#include <map>
#include <set>
#include <string>
#include <vector>

#include "ahp/port_graph.hpp"

namespace ahp::detail {

class GraphChecker {
public:
    GraphChecker(const Signature& sig, bool allow_vars, std::vector<Violation>& out)
        : sig_(sig), allow_vars_(allow_vars), out_(out) {}

    void check_graph(const PortGraph& g, const std::string& where);

private:
    void check_record(const std::string& kind, const std::string& label, const Record& r);
    void check_schema(const std::string& kind, const std::string& label, const Record& r);

    const Signature& sig_;
    bool allow_vars_;
    std::vector<Violation>& out_;
    std::map<std::string, std::map<std::string, std::pair<std::set<std::string>, std::string>>> schema_;
    std::map<std::string, std::pair<std::vector<std::string>, std::string>> interfaces_;
};

} // namespace ahp::detail
