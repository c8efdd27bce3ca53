#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace sival::cli {

/// Process exit codes.
enum ExitCode : int {
    ok = 0,
    violations_found = 1,
    parse_error = 2,
    binding_error = 3,
    not_converged = 4,
    bad_point = 5,
};

/// Runs one command. `args` excludes the program name, e.g.
/// {"eval", "x - x", "--var", "x=[0,1]"}.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace sival::cli
