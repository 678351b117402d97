#include <CLI11.hpp>

#include <functional>
#include <map>
#include <ostream>

#include "commands.hpp"
#include "qvortex/errors.hpp"
#include "qvortex_cli/cli.hpp"
#include "qvortex_cli/config.hpp"

namespace qvortex::cli {

namespace {

// Raw flag values; only those actually given on the command line override
// the config file.
struct Flags {
  std::string config;
  bool dump_config = false;
  double r1 = 0.0, r2 = 0.0;
  std::vector<std::string> vortex;
  int max_terms = 0, image_pairs = 0, laurent_order = 0;
  double abs_tol = 0.0;
  int nr = 0, ntheta = 0, threads = 0;
  std::string representation;
  double t_end = 0.0, dt = 0.0;
  int depth = 0;
  std::string output;
};

void add_common(CLI::App* sub, Flags& f) {
  sub->add_option("--config", f.config, "JSON config file; flags given here override it");
  sub->add_flag("--dump-config", f.dump_config, "Print the resolved config as JSON and exit");
  sub->add_option("--r1", f.r1, "Inner cylinder radius");
  sub->add_option("--r2", f.r2, "Outer cylinder radius");
  sub->add_option("--vortex", f.vortex, "Vortex as x,y,kappa (repeatable)")->take_all();
  sub->add_option("--max-terms", f.max_terms, "Series cutoff per sum (default 200)");
  sub->add_option("--abs-tol", f.abs_tol, "Target tail bound; 0 sums exactly max-terms (default 1e-12)");
  sub->add_option("--image-pairs", f.image_pairs, "Image shells per direction (default 40)");
  sub->add_option("--laurent-order", f.laurent_order, "Laurent truncation order M (default 60)");
  sub->add_option("--output", f.output, "Write the main artifact to this file");
}

RunConfig resolve(const CLI::App* sub, const Flags& f) {
  RunConfig cfg = f.config.empty() ? RunConfig{} : load_config(f.config);
  auto given = [&](const char* name) { return sub->count(name) > 0; };
  if (given("--r1")) cfg.r1 = f.r1;
  if (given("--r2")) cfg.r2 = f.r2;
  if (given("--vortex")) {
    cfg.vortices.clear();
    for (const auto& v : f.vortex) cfg.vortices.push_back(parse_vortex(v));
  }
  if (given("--max-terms")) cfg.max_terms = f.max_terms;
  if (given("--abs-tol")) cfg.abs_tol = f.abs_tol;
  if (given("--image-pairs")) cfg.image_pairs = f.image_pairs;
  if (given("--laurent-order")) cfg.laurent_order = f.laurent_order;
  if (given("--output")) cfg.output = f.output;
  if (sub->get_name() == "field") {
    if (given("--nr")) cfg.nr = f.nr;
    if (given("--ntheta")) cfg.ntheta = f.ntheta;
    if (given("--representation")) cfg.representation = f.representation;
    if (given("--threads")) cfg.threads = f.threads;
  }
  if (sub->get_name() == "orbit") {
    if (given("--t-end")) cfg.t_end = f.t_end;
    if (given("--dt")) cfg.dt = f.dt;
  }
  if (sub->get_name() == "images" && given("--depth")) cfg.depth = f.depth;
  return cfg;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Point vortices between two coaxial cylinders"};
  app.name(args.empty() ? "qvortex" : args.front());
  app.require_subcommand(1);

  Flags f;
  using Command = std::function<int(const RunConfig&, std::ostream&)>;
  std::map<std::string, Command> commands;

  auto* field = app.add_subcommand("field", "Velocity and stream function on a polar grid (CSV)");
  add_common(field, f);
  field->add_option("--nr", f.nr, "Radial grid points, walls included (default 16)");
  field->add_option("--ntheta", f.ntheta, "Angular grid points (default 32)");
  field->add_option("--representation", f.representation, "laurent | images | qlog | theta (default qlog)");
  field->add_option("--threads", f.threads, "Worker threads for the grid (default 1)");
  commands["field"] = cmd_field;

  auto* orbit = app.add_subcommand("orbit", "Integrate vortex trajectories (JSON summary, CSV path)");
  add_common(orbit, f);
  orbit->add_option("--t-end", f.t_end, "End time (default 1)");
  orbit->add_option("--dt", f.dt, "Time step (default: |omega| dt = 0.01 for the fastest vortex)");
  commands["orbit"] = cmd_orbit;

  auto* images = app.add_subcommand("images", "Image cascades of each vortex (JSON)");
  add_common(images, f);
  images->add_option("--depth", f.depth, "Generations per cascade (default 3)");
  commands["images"] = cmd_images;

  auto* limits = app.add_subcommand("limits", "Convergence to the one-cylinder and one-disk limits");
  add_common(limits, f);
  commands["limits"] = cmd_limits;

  auto* validate_cmd = app.add_subcommand("validate", "Cross-check the three representations");
  add_common(validate_cmd, f);
  commands["validate"] = cmd_validate;

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  if (argv.empty()) argv.push_back("qvortex");
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kFailure;
  }

  const CLI::App* sub = app.get_subcommands().front();
  try {
    const RunConfig cfg = resolve(sub, f);
    validate(cfg);
    if (f.dump_config) {
      out << to_json(cfg).dump(2) << '\n';
      return kOk;
    }
    return commands.at(sub->get_name())(cfg, out);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << " (achieved bound " << e.achieved_bound() << " after "
        << e.terms() << " terms)\n";
    return kNotConverged;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace qvortex::cli
