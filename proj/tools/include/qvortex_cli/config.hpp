#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qvortex/flow.hpp"

namespace qvortex::cli {

/// Malformed or invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct VortexSpec {
  double x = 0.0;
  double y = 0.0;
  double kappa = 1.0;

  bool operator==(const VortexSpec&) const = default;
};

struct RunConfig {
  double r1 = 1.0;
  double r2 = 2.0;
  std::vector<VortexSpec> vortices;

  int max_terms = 200;
  double abs_tol = 1e-12;
  int image_pairs = 40;
  int laurent_order = 60;

  // field
  int nr = 16;
  int ntheta = 32;
  std::string representation = "qlog";
  int threads = 1;

  // orbit
  double t_end = 1.0;
  std::optional<double> dt;  // default_time_step when absent

  // images
  int depth = 3;

  std::string output;  // empty: command-specific default

  bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& cfg);
/// Missing keys keep their defaults; wrong types and unknown keys throw ConfigError.
RunConfig from_json(const nlohmann::json& j);
RunConfig load_config(const std::string& path);

/// "x,y,kappa"
VortexSpec parse_vortex(const std::string& text);

/// Checks geometry, vortices, truncation and command options. Throws
/// ConfigError naming the field.
void validate(const RunConfig& cfg);

AnnulusGeometry make_geometry(const RunConfig& cfg);
VortexSystem make_system(const RunConfig& cfg);
TruncationPolicy make_policy(const RunConfig& cfg);
FlowSettings make_settings(const RunConfig& cfg);

}  // namespace qvortex::cli
