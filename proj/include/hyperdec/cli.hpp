#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hyperdec {

/// Runs one hyperdec invocation. `args` excludes the program name. Returns
/// the exit code: 0 success, 1 mathematical/domain error, 2 usage or syntax error.
/// `in` feeds the repl command.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace hyperdec
