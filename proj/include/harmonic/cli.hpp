#pragma once

#include <ostream>

namespace harmonic {

// harmonic_lab entry point. Exit codes: 0 all checks pass, 1 a tolerance
// failure, 2 usage or config error. JSON goes to `out`, diagnostics to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace harmonic
