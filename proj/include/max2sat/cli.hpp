#pragma once

#include <iosfwd>

namespace max2sat {

/// Entry point for the max2sat command line. Returns the process exit code;
/// diagnostics go to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace max2sat
