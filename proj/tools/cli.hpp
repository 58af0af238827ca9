#pragma once

#include <iosfwd>

namespace shortlab::cli {

// Runs one subcommand. Returns 0 on success, 2 on invalid input and 3 when a
// resource limit (table size, memory, budget) is hit.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace shortlab::cli
