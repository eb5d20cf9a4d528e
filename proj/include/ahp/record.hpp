#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>

#include "ahp/value.hpp"

namespace ahp {

inline constexpr const char* kName = "Name";
inline constexpr const char* kOriented = "Oriented";
inline constexpr const char* kType = "Type";
// Reserved: derived from structure, never stored in a record.
inline constexpr const char* kInterface = "Interface";
inline constexpr const char* kLadder = "Ladder";

/// Attribute -> value map labelling a graph element. Keys are unique and the
/// pairs are kept sorted, so equality is independent of insertion order.
class Record {
public:
    Record() = default;
    Record(std::initializer_list<std::pair<const std::string, AttrValue>> pairs) : pairs_(pairs) {}

    static Record named(Value name) { return Record{{kName, Expr{std::move(name)}}}; }

    std::optional<AttrValue> get(const std::string& key) const;
    bool contains(const std::string& key) const { return pairs_.count(key) != 0; }
    Record& set(const std::string& key, AttrValue v);
    void erase(const std::string& key) { pairs_.erase(key); }

    /// The Name attribute, if present.
    std::optional<AttrValue> name() const { return get(kName); }
    /// The Name as a concrete string, when it is one.
    std::optional<std::string> concrete_name() const;

    const std::map<std::string, AttrValue>& pairs() const { return pairs_; }
    std::size_t size() const { return pairs_.size(); }
    bool empty() const { return pairs_.empty(); }

    bool is_concrete() const;

    friend bool operator==(const Record&, const Record&) = default;

private:
    std::map<std::string, AttrValue> pairs_;
};

/// Atts(r): the key set.
std::set<std::string> atts(const Record& r);

/// r.key, or nullopt when absent.
inline std::optional<AttrValue> record_get(const Record& r, const std::string& key) { return r.get(key); }

std::string to_string(const Record& r);

} // namespace ahp
