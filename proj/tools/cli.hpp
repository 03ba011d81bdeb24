#ifndef BRACKETLAB_TOOLS_CLI_HPP
#define BRACKETLAB_TOOLS_CLI_HPP

#include <ostream>

namespace bracketlab::cli {

/// Exit codes: 0 success, 1 usage / validation / parse failure, 2 a failed
/// check in `experiment`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bracketlab::cli

#endif  // BRACKETLAB_TOOLS_CLI_HPP
