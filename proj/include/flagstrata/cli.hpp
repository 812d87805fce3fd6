#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace flagstrata::cli {

/// Runs the command-line tool on the given arguments (without argv[0]).
/// Exit codes: 0 success, 1 domain error (machine-readable error object on
/// stdout), 2 usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace flagstrata::cli
