#ifndef PCH_CLI_HPP
#define PCH_CLI_HPP

#include <ostream>

namespace pch::cli {

// Exit codes of the `pch` tool.
enum Exit : int
{
  kOk = 0,        // proved / Valid
  kRefuted = 1,   // counterexample / Invalid / Rejected
  kUsage = 2,     // usage or I/O error
  kLimit = 3      // resource limit
};

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace pch::cli

#endif
