#ifndef POVKIT_CLI_HPP
#define POVKIT_CLI_HPP

#include <ostream>
#include <string>
#include <vector>

namespace povkit::cli {

/// Runs the command-line tool on `args` (without the program name) and
/// writes the report to `out`. Exit codes: 0 success, 2 usage error,
/// 1 computation error; `verify` additionally exits 1 on any mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace povkit::cli

#endif
