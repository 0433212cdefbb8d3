#pragma once

#include <iosfwd>

namespace mldtw {

/// Entry point of the `mldtw` tool. Exit codes: 0 success, 1 runtime or I/O
/// failure, 2 usage error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace mldtw
