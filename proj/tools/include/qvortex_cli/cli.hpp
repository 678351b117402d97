#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qvortex::cli {

enum ExitCode : int { kOk = 0, kFailure = 1, kNotConverged = 2 };

/// Runs one subcommand (field, orbit, images, limits, validate). args[0] is
/// the program name. Returns 0 on success, 1 on domain, validation or I/O
/// errors (and when `validate` finds a tolerance exceeded), 2 when a series
/// or product did not converge.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qvortex::cli
