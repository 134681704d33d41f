#pragma once

#include <iosfwd>

namespace msvc::cli {

/// Runs the msvc command line. Results go to `out`, diagnostics and the run
/// manifest to `err`. Returns 0 on success, 2 on usage errors and 1 when a
/// computation or input file fails.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace msvc::cli
