#pragma once

#include <string>

namespace qvortex::cli {

/// Shortest decimal that reads back to the same double, '.' separator
/// regardless of locale; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double value);

}  // namespace qvortex::cli
