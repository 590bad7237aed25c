#pragma once

#include <iosfwd>

namespace posreal::cli {

/// Runs one command. Exit codes: 0 success, 1 domain failure (JSON error on
/// `err`), 2 usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace posreal::cli
