#pragma once

// The petlab command-line surface, separated from main() so tests can drive
// it in-process with captured streams. Exit codes: 0 success, 1 domain error
// (structured JSON on out) or a verification suite with failures, 2 usage
// errors (message on err names the offending flag).

#include <iosfwd>
#include <string>
#include <vector>

namespace petlab {

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace petlab
