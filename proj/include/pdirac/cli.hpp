#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pdirac
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_compute_error = 1,
    exit_usage_error = 2,
};

/// Runs one subcommand (check-algebra, check-spinors, xsec, entangle, evolve). args excludes the
/// program name. Reports go to out; failures print a JSON error object to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pdirac
