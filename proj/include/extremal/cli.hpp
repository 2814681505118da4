#pragma once

#include <iosfwd>

namespace extremal {

/// Exit codes: 0 all checks pass, 1 usage error, 2 some check failed.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace extremal
