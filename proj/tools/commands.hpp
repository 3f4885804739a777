#pragma once

#include <ostream>

namespace sympca::cli {

// Exit codes: 0 ok, 1 usage error, 2 divergence, 3 verification failure.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sympca::cli
