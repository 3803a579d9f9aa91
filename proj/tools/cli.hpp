// cli.hpp -- the shiftree command line, callable in-process for tests.

#pragma once

#include <ostream>

namespace shiftree::cli {

/// Exit codes: 0 success, 1 validation or parse failure, 2 insufficient depth.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace shiftree::cli
