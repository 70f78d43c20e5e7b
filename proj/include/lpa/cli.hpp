#ifndef LPA_CLI_HPP
#define LPA_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace lpa {

/// Dispatches one command line (without the program name).
/// Exit codes: 0 success, 1 domain rejection, 2 parse error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace lpa

#endif
