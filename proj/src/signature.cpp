#include "ahp/signature.hpp"

#include "ahp/record.hpp"

namespace ahp {

bool Signature::is_attribute(const std::string& key) const {
    return attributes.count(key) != 0 || key == kName || key == kOriented || key == kType;
}

std::vector<Violation> validate_signature(const Signature& sig) {
    std::vector<Violation> out;
    std::map<std::string, std::string> seen;
    auto note = [&](const std::string& name, const char* set) {
        auto [it, fresh] = seen.emplace(name, set);
        if (!fresh)
            out.push_back({"signature-overlap",
                           "'" + name + "' is declared both as " + it->second + " and as " + set});
    };
    for (const auto& a : sig.attributes) note(a, "attribute");
    for (const auto& a : sig.attribute_vars) note(a, "attribute variable");
    for (const auto& v : sig.value_vars) note(v, "value variable");
    for (const auto& [g, iface] : sig.graph_vars) {
        note(g, "graph variable");
        std::set<std::string> names(iface.begin(), iface.end());
        if (names.size() != iface.size())
            out.push_back({"graph-var-interface", "graph variable '" + g + "' repeats a port name"});
    }
    return out;
}

} // namespace ahp
