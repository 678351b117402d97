#pragma once

#include <iosfwd>

#include "qvortex_cli/config.hpp"

namespace qvortex::cli {

// Each command writes its primary artifact to `out` (or cfg.output when set)
// and returns an exit code. Library exceptions propagate to run().
int cmd_field(const RunConfig& cfg, std::ostream& out);
int cmd_orbit(const RunConfig& cfg, std::ostream& out);
int cmd_images(const RunConfig& cfg, std::ostream& out);
int cmd_limits(const RunConfig& cfg, std::ostream& out);
int cmd_validate(const RunConfig& cfg, std::ostream& out);

}  // namespace qvortex::cli
