#include "qvortex_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qvortex::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& where, const std::set<std::string>& known) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) throw ConfigError(where + "." + key + ": unknown key");
  }
}

const json& object_at(const json& j, const std::string& key, const std::string& where) {
  const json& v = j.at(key);
  if (!v.is_object()) throw ConfigError(where + "." + key + ": expected an object");
  return v;
}

template <typename T>
void read(const json& obj, const char* key, const std::string& where, T& target) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  const std::string path = where + "." + key;
  if constexpr (std::is_same_v<T, std::string>) {
    if (!v.is_string()) throw ConfigError(path + ": expected a string");
    target = v.get<std::string>();
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ConfigError(path + ": expected an integer");
    target = v.get<T>();
  } else {
    if (!v.is_number()) throw ConfigError(path + ": expected a number");
    target = v.get<T>();
  }
}

std::string field_name(const char* name, std::size_t index) {
  std::ostringstream s;
  s << "vortices[" << index << "]." << name;
  return s.str();
}

}  // namespace

json to_json(const RunConfig& cfg) {
  json vortices = json::array();
  for (const auto& v : cfg.vortices) vortices.push_back({{"x", v.x}, {"y", v.y}, {"kappa", v.kappa}});
  json orbit = {{"t_end", cfg.t_end}};
  orbit["dt"] = cfg.dt ? json(*cfg.dt) : json(nullptr);
  return {
      {"geometry", {{"r1", cfg.r1}, {"r2", cfg.r2}}},
      {"vortices", vortices},
      {"truncation",
       {{"max_terms", cfg.max_terms}, {"abs_tol", cfg.abs_tol}, {"image_pairs", cfg.image_pairs}}},
      {"laurent_order", cfg.laurent_order},
      {"field",
       {{"nr", cfg.nr},
        {"ntheta", cfg.ntheta},
        {"representation", cfg.representation},
        {"threads", cfg.threads}}},
      {"orbit", orbit},
      {"images", {{"depth", cfg.depth}}},
      {"output", cfg.output},
  };
}

RunConfig from_json(const json& j) {
  if (!j.is_object()) throw ConfigError("config: expected a JSON object at top level");
  reject_unknown(j, "config",
                 {"geometry", "vortices", "truncation", "laurent_order", "field", "orbit", "images",
                  "output"});
  RunConfig cfg;
  if (j.contains("geometry")) {
    const json& g = object_at(j, "geometry", "config");
    reject_unknown(g, "geometry", {"r1", "r2"});
    read(g, "r1", "geometry", cfg.r1);
    read(g, "r2", "geometry", cfg.r2);
  }
  if (j.contains("vortices")) {
    const json& vs = j.at("vortices");
    if (!vs.is_array()) throw ConfigError("vortices: expected an array");
    for (std::size_t i = 0; i < vs.size(); ++i) {
      const json& v = vs[i];
      std::ostringstream where;
      where << "vortices[" << i << "]";
      if (!v.is_object()) throw ConfigError(where.str() + ": expected an object");
      reject_unknown(v, where.str(), {"x", "y", "kappa"});
      for (const char* key : {"x", "y"}) {
        if (!v.contains(key)) throw ConfigError(where.str() + "." + key + ": missing");
      }
      VortexSpec spec;
      read(v, "x", where.str(), spec.x);
      read(v, "y", where.str(), spec.y);
      read(v, "kappa", where.str(), spec.kappa);
      cfg.vortices.push_back(spec);
    }
  }
  if (j.contains("truncation")) {
    const json& t = object_at(j, "truncation", "config");
    reject_unknown(t, "truncation", {"max_terms", "abs_tol", "image_pairs"});
    read(t, "max_terms", "truncation", cfg.max_terms);
    read(t, "abs_tol", "truncation", cfg.abs_tol);
    read(t, "image_pairs", "truncation", cfg.image_pairs);
  }
  read(j, "laurent_order", "config", cfg.laurent_order);
  if (j.contains("field")) {
    const json& f = object_at(j, "field", "config");
    reject_unknown(f, "field", {"nr", "ntheta", "representation", "threads"});
    read(f, "nr", "field", cfg.nr);
    read(f, "ntheta", "field", cfg.ntheta);
    read(f, "representation", "field", cfg.representation);
    read(f, "threads", "field", cfg.threads);
  }
  if (j.contains("orbit")) {
    const json& o = object_at(j, "orbit", "config");
    reject_unknown(o, "orbit", {"t_end", "dt"});
    read(o, "t_end", "orbit", cfg.t_end);
    if (o.contains("dt") && !o.at("dt").is_null()) {
      double dt = 0.0;
      read(o, "dt", "orbit", dt);
      cfg.dt = dt;
    }
  }
  if (j.contains("images")) {
    const json& im = object_at(j, "images", "config");
    reject_unknown(im, "images", {"depth"});
    read(im, "depth", "images", cfg.depth);
  }
  read(j, "output", "config", cfg.output);
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return from_json(j);
}

VortexSpec parse_vortex(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--vortex '" + text + "': '" + item + "' is not a number");
    }
  }
  if (parts.size() != 3) throw ConfigError("--vortex '" + text + "': expected x,y,kappa");
  return {parts[0], parts[1], parts[2]};
}

void validate(const RunConfig& cfg) {
  if (!std::isfinite(cfg.r1) || !(cfg.r1 > 0.0)) throw ConfigError("geometry.r1: must be > 0");
  if (!std::isfinite(cfg.r2) || !(cfg.r2 > cfg.r1)) throw ConfigError("geometry.r2: must exceed r1");
  try {
    static_cast<void>(AnnulusGeometry(cfg.r1, cfg.r2));
  } catch (const DomainError& e) {
    throw ConfigError(std::string("geometry: ") + e.what());
  }
  if (cfg.vortices.empty()) throw ConfigError("vortices: at least one vortex is required");
  for (std::size_t i = 0; i < cfg.vortices.size(); ++i) {
    const auto& v = cfg.vortices[i];
    if (!std::isfinite(v.x)) throw ConfigError(field_name("x", i) + ": must be finite");
    if (!std::isfinite(v.y)) throw ConfigError(field_name("y", i) + ": must be finite");
    if (!std::isfinite(v.kappa) || v.kappa == 0.0) {
      throw ConfigError(field_name("kappa", i) + ": must be finite and nonzero");
    }
    const double r = std::hypot(v.x, v.y);
    if (!(r > cfg.r1 && r < cfg.r2)) {
      std::ostringstream msg;
      msg << "vortices[" << i << "]: |z| = " << r << " is not strictly inside (" << cfg.r1 << ", "
          << cfg.r2 << ")";
      throw ConfigError(msg.str());
    }
    for (std::size_t k = 0; k < i; ++k) {
      if (cfg.vortices[k].x == v.x && cfg.vortices[k].y == v.y) {
        std::ostringstream msg;
        msg << "vortices[" << i << "]: same position as vortices[" << k << "]";
        throw ConfigError(msg.str());
      }
    }
  }
  if (cfg.max_terms < 1) throw ConfigError("truncation.max_terms: must be >= 1");
  if (!std::isfinite(cfg.abs_tol) || cfg.abs_tol < 0.0) {
    throw ConfigError("truncation.abs_tol: must be finite and >= 0");
  }
  if (cfg.image_pairs < 1) throw ConfigError("truncation.image_pairs: must be >= 1");
  if (cfg.laurent_order < 0) throw ConfigError("laurent_order: must be >= 0");
  if (cfg.nr < 1) throw ConfigError("field.nr: must be >= 1");
  if (cfg.ntheta < 1) throw ConfigError("field.ntheta: must be >= 1");
  if (cfg.threads < 1) throw ConfigError("field.threads: must be >= 1");
  if (cfg.representation != "theta" && !parse_representation(cfg.representation)) {
    throw ConfigError("field.representation: expected laurent, images, qlog or theta, got '" +
                      cfg.representation + "'");
  }
  if (!std::isfinite(cfg.t_end) || cfg.t_end < 0.0) throw ConfigError("orbit.t_end: must be >= 0");
  if (cfg.dt && (!std::isfinite(*cfg.dt) || !(*cfg.dt > 0.0))) {
    throw ConfigError("orbit.dt: must be > 0");
  }
  if (cfg.depth < 1) throw ConfigError("images.depth: must be >= 1");
}

AnnulusGeometry make_geometry(const RunConfig& cfg) { return AnnulusGeometry(cfg.r1, cfg.r2); }

VortexSystem make_system(const RunConfig& cfg) {
  std::vector<Vortex> vs;
  for (const auto& v : cfg.vortices) vs.push_back({{v.x, v.y}, v.kappa});
  return VortexSystem(make_geometry(cfg), std::move(vs));
}

TruncationPolicy make_policy(const RunConfig& cfg) {
  return TruncationPolicy(cfg.max_terms, cfg.abs_tol, cfg.image_pairs);
}

FlowSettings make_settings(const RunConfig& cfg) {
  return FlowSettings{make_policy(cfg), cfg.laurent_order};
}

}  // namespace qvortex::cli
