#pragma once

#include <iosfwd>

namespace polyflow {

/// Command-line entry point: simulate, spectrum, analyze, reproduce and
/// validate. Returns 0 on success, 1 when a check fails (or a simulation
/// ends degenerate) and 2 on a usage or configuration error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int cli_main(int argc, const char* const* argv);

}  // namespace polyflow
