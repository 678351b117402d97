#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <numbers>
#include <ostream>
#include <thread>
#include <vector>

#include "qvortex/qvortex.hpp"
#include "qvortex_cli/cli.hpp"
#include "qvortex_cli/format.hpp"

namespace qvortex::cli {

using nlohmann::json;

namespace {

constexpr int kResidualSamples = 256;
constexpr double kValidateTolerance = 1e-8;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Writes to cfg.output when set, else to the fallback stream.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw ConfigError("output: cannot open '" + path + "' for writing");
      stream_ = &file_;
    }
  }
  std::ostream& stream() { return *stream_; }
  void finish() {
    stream_->flush();
    if (!*stream_) throw ConfigError("output: write failed");
  }

 private:
  std::ofstream file_;
  std::ostream* stream_;
};

json geometry_json(const AnnulusGeometry& g) {
  return {{"r1", g.r1()}, {"r2", g.r2()}, {"q", g.q()}};
}

json truncation_json(const RunConfig& cfg) {
  return {{"max_terms", cfg.max_terms},
          {"abs_tol", cfg.abs_tol},
          {"image_pairs", cfg.image_pairs},
          {"laurent_order", cfg.laurent_order}};
}

json vortices_json(const RunConfig& cfg) {
  json arr = json::array();
  for (const auto& v : cfg.vortices) arr.push_back({{"x", v.x}, {"y", v.y}, {"kappa", v.kappa}});
  return arr;
}

json residual_json(const BoundaryResidual& r) {
  return {{"inner", r.max_inner}, {"outer", r.max_outer}, {"skipped", r.skipped}};
}

struct FieldRow {
  Complex z;
  Complex vbar{kNaN, kNaN};
  double psi = kNaN;
};

// Evaluates fn(i) for i in [0, n) over `threads` contiguous blocks. The first
// exception (by block order) is rethrown after every worker has joined.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn fn) {
  const std::size_t workers = std::clamp<std::size_t>(static_cast<std::size_t>(threads), 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  const std::size_t block = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w * block; i < std::min(n, (w + 1) * block); ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

int cmd_field(const RunConfig& cfg, std::ostream& out) {
  const VortexSystem sys = make_system(cfg);
  const FlowSettings settings = make_settings(cfg);
  const TruncationPolicy& policy = settings.truncation;
  const bool theta = cfg.representation == "theta";
  // The theta form only yields the stream function; velocities come from
  // the q-log closed form it is equivalent to.
  const Representation rep = theta ? Representation::qlog : *parse_representation(cfg.representation);
  const FlowEvaluator eval(sys, rep, settings);
  const std::optional<RescaledSystem> unit = theta ? std::optional(rescale_to_unit_outer(sys)) : std::nullopt;

  const auto& g = sys.geometry();
  std::vector<FieldRow> rows;
  rows.reserve(static_cast<std::size_t>(cfg.nr) * cfg.ntheta);
  for (int i = 0; i < cfg.nr; ++i) {
    const double r = cfg.nr == 1 ? 0.5 * (g.r1() + g.r2()) : g.r1() + (g.r2() - g.r1()) * i / (cfg.nr - 1);
    for (int j = 0; j < cfg.ntheta; ++j) {
      rows.push_back({std::polar(r, 2.0 * std::numbers::pi * j / cfg.ntheta)});
    }
  }

  parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
    FieldRow& row = rows[i];
    try {
      row.vbar = eval.velocity(row.z);
      row.psi = theta ? stream_theta(unit->system, row.z * unit->scale, policy)
                      : stream_function(sys, row.z, policy);
    } catch (const SingularityError&) {
      row = FieldRow{row.z};
    } catch (const PoleError&) {
      row = FieldRow{row.z};
    }
  });

  const BoundaryResidual residual = boundary_residual(sys, rep, kResidualSamples, settings);
  const json meta = {{"command", "field"},
                     {"geometry", geometry_json(g)},
                     {"vortices", vortices_json(cfg)},
                     {"truncation", truncation_json(cfg)},
                     {"representation", cfg.representation},
                     {"grid", {{"nr", cfg.nr}, {"ntheta", cfg.ntheta}}},
                     {"residuals", residual_json(residual)},
                     {"residual_samples_per_circle", kResidualSamples}};

  Sink sink(cfg.output, out);
  std::ostream& os = sink.stream();
  os << "# " << meta.dump() << '\n' << "x,y,u,v,psi\n";
  for (const auto& row : rows) {
    // Vbar = u - i v.
    os << format_double(row.z.real()) << ',' << format_double(row.z.imag()) << ','
       << format_double(row.vbar.real()) << ',' << format_double(-row.vbar.imag()) << ','
       << format_double(row.psi) << '\n';
  }
  sink.finish();
  return kOk;
}

int cmd_orbit(const RunConfig& cfg, std::ostream& out) {
  const VortexSystem sys = make_system(cfg);
  const TruncationPolicy policy = make_policy(cfg);
  const double dt = cfg.dt ? *cfg.dt : default_time_step(sys, policy);
  const Trajectory traj = integrate(sys, cfg.t_end, dt, policy);

  json summary = {{"command", "orbit"},
                  {"geometry", geometry_json(sys.geometry())},
                  {"t_end", cfg.t_end},
                  {"dt", dt},
                  {"steps", traj.times.size() - 1},
                  {"t_final", traj.times.back()},
                  {"completed", traj.completed},
                  {"diagnostic", traj.diagnostic}};
  json per = json::array();
  for (std::size_t k = 0; k < sys.size(); ++k) {
    const Complex last = traj.positions.back()[k];
    per.push_back({{"index", k},
                   {"kappa", sys[k].strength},
                   {"radius", traj.conserved_radii[k]},
                   {"radius_drift", traj.radius_drift(k)},
                   {"final", {{"x", last.real()}, {"y", last.imag()}}}});
  }
  summary["vortices"] = per;
  if (sys.size() == 1) {
    const OrbitState s = orbit_frequency(sys.geometry(), sys[0].strength, traj.conserved_radii[0], policy);
    summary["omega"] = s.omega;
    summary["omega1"] = s.omega1;
    summary["omega2"] = s.omega2;
    summary["period"] = s.omega != 0.0 ? json(2.0 * std::numbers::pi / std::abs(s.omega)) : json(nullptr);
  }
  out << summary.dump(2) << '\n';

  if (!cfg.output.empty()) {
    Sink sink(cfg.output, out);
    std::ostream& os = sink.stream();
    os << 't';
    for (std::size_t k = 1; k <= sys.size(); ++k) os << ",x" << k << ",y" << k;
    os << '\n';
    for (std::size_t i = 0; i < traj.times.size(); ++i) {
      os << format_double(traj.times[i]);
      for (const Complex& p : traj.positions[i]) {
        os << ',' << format_double(p.real()) << ',' << format_double(p.imag());
      }
      os << '\n';
    }
    sink.finish();
  }
  return traj.completed ? kOk : kFailure;
}

int cmd_images(const RunConfig& cfg, std::ostream& out) {
  const AnnulusGeometry g = make_geometry(cfg);
  json arr = json::array();
  for (std::size_t k = 0; k < cfg.vortices.size(); ++k) {
    const auto& v = cfg.vortices[k];
    for (const auto& im : cascade({{v.x, v.y}, v.kappa}, g, cfg.depth).images) {
      arr.push_back({{"re", im.position.real()},
                     {"im", im.position.imag()},
                     {"sign", im.strength_sign},
                     {"generation", im.generation},
                     {"family", std::string(to_string(im.family))},
                     {"vortex", k}});
    }
  }
  Sink sink(cfg.output, out);
  sink.stream() << arr.dump(2) << '\n';
  sink.finish();
  return kOk;
}

int cmd_limits(const RunConfig& cfg, std::ostream& out) {
  const VortexSystem sys = make_system(cfg);
  const TruncationPolicy policy = make_policy(cfg);
  const auto& g = sys.geometry();
  const Vortex lead = sys[0];
  const double kappa = lead.strength;
  const Complex z0 = lead.position;

  // 4 radii x 5 angles inside the configured annulus, clear of every vortex.
  std::vector<Complex> pts;
  for (double alpha : {0.2, 0.4, 0.6, 0.8}) {
    const double r = g.r1() * std::pow(g.q(), alpha / 2.0);
    for (int j = 0; j < 5; ++j) {
      const Complex z = std::polar(r, 0.37 + 2.0 * std::numbers::pi * j / 5);
      const bool clear = std::none_of(sys.vortices().begin(), sys.vortices().end(), [&](const Vortex& v) {
        return std::abs(z - v.position) < 1e-3 * g.r2();
      });
      if (clear) pts.push_back(z);
    }
  }

  Sink sink(cfg.output, out);
  std::ostream& os = sink.stream();
  os << "# one cylinder: r1 = " << format_double(g.r1()) << ", r2 = r1 sqrt(q); one disk: r2 = "
     << format_double(g.r2()) << ", r1 = r2 / sqrt(q); vortex (" << format_double(z0.real()) << ", "
     << format_double(z0.imag()) << "), kappa = " << format_double(kappa) << "; " << pts.size()
     << " points\n";
  os << "q,cylinder_velocity_rel_error,disk_velocity_rel_error,cylinder_omega_rel_error,"
        "disk_omega_rel_error\n";
  double prev_c = std::numeric_limits<double>::infinity();
  double prev_d = prev_c;
  bool monotone = true;
  for (double q : {1e3, 1e4, 1e5, 1e6}) {
    const VortexSystem cyl(AnnulusGeometry(g.r1(), g.r1() * std::sqrt(q)), {lead});
    const VortexSystem disk(AnnulusGeometry(g.r2() / std::sqrt(q), g.r2()), {lead});
    double ec = 0.0, ed = 0.0;
    for (Complex z : pts) {
      const Complex lc = limit_one_cylinder(g.r1(), kappa, z0, z).velocity;
      const Complex ld = limit_one_disk(g.r2(), kappa, z0, z).velocity;
      ec = std::max(ec, std::abs(velocity_qlog(cyl, z, policy) - lc) / std::abs(lc));
      ed = std::max(ed, std::abs(velocity_qlog(disk, z, policy) - ld) / std::abs(ld));
    }
    const double r0 = std::abs(z0);
    const double wc = limit_one_cylinder(g.r1(), kappa, z0, 2.0 * z0).omega;
    const double wd = limit_one_disk(g.r2(), kappa, z0, 2.0 * z0).omega;
    const double oc = std::abs(orbit_frequency(cyl.geometry(), kappa, r0, policy).omega / wc - 1.0);
    const double od = std::abs(orbit_frequency(disk.geometry(), kappa, r0, policy).omega / wd - 1.0);
    monotone = monotone && ec < prev_c && ed < prev_d;
    prev_c = ec;
    prev_d = ed;
    os << format_double(q) << ',' << format_double(ec) << ',' << format_double(ed) << ','
       << format_double(oc) << ',' << format_double(od) << '\n';
  }
  os << "# velocity errors decrease monotonically in q: " << (monotone ? "yes" : "no") << '\n';
  sink.finish();
  return kOk;
}

int cmd_validate(const RunConfig& cfg, std::ostream& out) {
  const VortexSystem sys = make_system(cfg);
  const FlowSettings settings = make_settings(cfg);
  const auto& g = sys.geometry();
  const FlowEvaluator lau(sys, Representation::laurent, settings);
  const FlowEvaluator img(sys, Representation::images, settings);
  const FlowEvaluator ql(sys, Representation::qlog, settings);

  double d_li = 0.0, d_iq = 0.0, d_lq = 0.0;
  int points = 0;
  for (int i = 0; i < 10; ++i) {
    const double r = g.r1() * std::pow(g.q(), (0.05 + 0.1 * i) / 2.0);
    for (int j = 0; j < 16; ++j) {
      const Complex z = std::polar(r, 0.123 + 2.0 * std::numbers::pi * j / 16);
      const bool clear = std::none_of(sys.vortices().begin(), sys.vortices().end(), [&](const Vortex& v) {
        return std::abs(z - v.position) < 1e-3 * g.r2();
      });
      if (!clear) continue;
      const Complex a = lau.velocity(z), b = img.velocity(z), c = ql.velocity(z);
      d_li = std::max(d_li, std::abs(a - b));
      d_iq = std::max(d_iq, std::abs(b - c));
      d_lq = std::max(d_lq, std::abs(a - c));
      ++points;
    }
  }

  json residuals = json::object();
  double worst_residual = 0.0;
  for (auto rep : {Representation::laurent, Representation::images, Representation::qlog}) {
    const BoundaryResidual r = boundary_residual(sys, rep, kResidualSamples, settings);
    residuals[std::string(to_string(rep))] = residual_json(r);
    worst_residual = std::max({worst_residual, r.max_inner, r.max_outer});
  }
  const double worst_discrepancy = std::max({d_li, d_iq, d_lq});
  const bool pass = worst_discrepancy < kValidateTolerance && worst_residual < kValidateTolerance;

  const json report = {{"command", "validate"},
                       {"geometry", geometry_json(g)},
                       {"vortices", vortices_json(cfg)},
                       {"truncation", truncation_json(cfg)},
                       {"sample_points", points},
                       {"max_discrepancy",
                        {{"laurent_images", d_li}, {"images_qlog", d_iq}, {"laurent_qlog", d_lq}}},
                       {"boundary_residual", residuals},
                       {"residual_samples_per_circle", kResidualSamples},
                       {"tolerance", kValidateTolerance},
                       {"pass", pass}};
  Sink sink(cfg.output, out);
  sink.stream() << report.dump(2) << '\n';
  sink.finish();
  return pass ? kOk : kFailure;
}

}  // namespace qvortex::cli
