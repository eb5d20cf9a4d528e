#include "ahp/record.hpp"

namespace ahp {

std::optional<AttrValue> Record::get(const std::string& key) const {
    auto it = pairs_.find(key);
    if (it == pairs_.end()) return std::nullopt;
    return it->second;
}

Record& Record::set(const std::string& key, AttrValue v) {
    pairs_.insert_or_assign(key, std::move(v));
    return *this;
}

std::optional<std::string> Record::concrete_name() const {
    auto n = name();
    if (!n || !n->is_literal()) return std::nullopt;
    if (auto s = std::get_if<std::string>(&n->literal())) return *s;
    return std::nullopt;
}

bool Record::is_concrete() const {
    for (const auto& [k, v] : pairs_)
        if (!v.is_literal()) return false;
    return true;
}

std::set<std::string> atts(const Record& r) {
    std::set<std::string> out;
    for (const auto& [k, v] : r.pairs()) out.insert(k);
    return out;
}

std::string to_string(const Record& r) {
    std::string out = "{";
    bool first = true;
    for (const auto& [k, v] : r.pairs()) {
        if (!first) out += ", ";
        first = false;
        out += k + ": " + to_string(v);
    }
    return out + "}";
}

} // namespace ahp
