#pragma once

#include <ostream>

namespace ahp {

/// The `ahp` command line. Exit codes: 0 success, 1 validation, parse or
/// strategy failure, 2 usage errors (bad arguments, unknown names).
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace ahp
