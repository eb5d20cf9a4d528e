#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace ahp {

/// One broken well-formedness rule. `code` is a stable kebab-case tag that
/// tests and tooling key on; `message` is for humans.
struct Violation {
    std::string code;
    std::string message;

    friend bool operator==(const Violation&, const Violation&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const Violation& v) {
    return os << v.code << ": " << v.message;
}

inline bool has_violation(const std::vector<Violation>& vs, const std::string& code) {
    for (const auto& v : vs)
        if (v.code == code) return true;
    return false;
}

} // namespace ahp
