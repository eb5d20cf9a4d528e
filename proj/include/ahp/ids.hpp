#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace ahp {

// Opaque element identity. Names are labels; ids are what the engine tracks.
template <class Tag>
struct Id {
    std::uint64_t value = 0;

    constexpr Id() = default;
    constexpr explicit Id(std::uint64_t v) : value(v) {}

    friend constexpr auto operator<=>(const Id&, const Id&) = default;
};

using NodeId = Id<struct NodeTag>;
using PortId = Id<struct PortTag>;
using EdgeId = Id<struct EdgeTag>;

template <class Tag>
std::ostream& operator<<(std::ostream& os, Id<Tag> id) {
    return os << id.value;
}

inline std::string to_string(NodeId id) { return "n" + std::to_string(id.value); }
inline std::string to_string(PortId id) { return "p" + std::to_string(id.value); }
inline std::string to_string(EdgeId id) { return "e" + std::to_string(id.value); }

// Hands out ids above a watermark. One counter covers all element kinds.
class IdAllocator {
public:
    explicit IdAllocator(std::uint64_t last_used = 0) : next_(last_used + 1) {}

    NodeId node() { return NodeId{next_++}; }
    PortId port() { return PortId{next_++}; }
    EdgeId edge() { return EdgeId{next_++}; }
    std::uint64_t peek() const { return next_; }

private:
    std::uint64_t next_;
};

} // namespace ahp

template <class Tag>
struct std::hash<ahp::Id<Tag>> {
    std::size_t operator()(ahp::Id<Tag> id) const noexcept { return std::hash<std::uint64_t>{}(id.value); }
};
