#ifndef TIM_CLI_HPP
#define TIM_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace tim::cli {

// Full command-line driver; args excludes the program name.  Writes the
// report to `out` and diagnostics to `err`.  Exit codes: 0 success,
// 1 validation failure, 2 parse/usage error, 3 invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace tim::cli

#endif  // TIM_CLI_HPP
