#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace riskbn {

// Runs one command-line invocation (arguments only, no program name).
// Returns the process exit code: 0 success, 1 usage problems, 2 model or
// inference errors.  Results go to out, diagnostics to err.
int cli_dispatch(const std::vector<std::string>& args, std::ostream& out,
                 std::ostream& err);

} // namespace riskbn
