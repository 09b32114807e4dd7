#ifndef PAE_CLI_HPP
#define PAE_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace pae::cli {

enum ExitCode { Ok = 0, Failure = 1, Usage = 2 };

// Runs the `pae` command line. args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace pae::cli

#endif
