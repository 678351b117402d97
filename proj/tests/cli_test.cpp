#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qvortex_cli/cli.hpp"
#include "qvortex_cli/config.hpp"
#include "qvortex_cli/format.hpp"

namespace {

using qvortex::cli::RunConfig;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "qvortex");
  std::ostringstream out;
  std::ostringstream err;
  const int code = qvortex::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() /
         ("qvortex_cli_test_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
          "_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return lines;
}

const std::vector<std::string> kBase = {"--r1", "1", "--r2", "2", "--vortex", "1.5,0,1"};

std::vector<std::string> with_base(std::string sub, std::vector<std::string> extra = {}) {
  std::vector<std::string> args{std::move(sub)};
  args.insert(args.end(), kBase.begin(), kBase.end());
  args.insert(args.end(), extra.begin(), extra.end());
  return args;
}

TEST(CliConfig, JsonRoundTripPreservesEveryField) {
  RunConfig cfg;
  cfg.r1 = 0.5;
  cfg.r2 = 3.0;
  cfg.vortices = {{1.0, 0.25, -2.0}, {-1.5, 0.1, 0.5}};
  cfg.max_terms = 321;
  cfg.abs_tol = 1e-11;
  cfg.image_pairs = 12;
  cfg.laurent_order = 17;
  cfg.nr = 5;
  cfg.ntheta = 7;
  cfg.representation = "images";
  cfg.threads = 3;
  cfg.t_end = 2.5;
  cfg.dt = 0.003;
  cfg.depth = 4;
  cfg.output = "out.csv";
  EXPECT_EQ(qvortex::cli::from_json(qvortex::cli::to_json(cfg)), cfg);

  cfg.dt.reset();
  EXPECT_EQ(qvortex::cli::from_json(qvortex::cli::to_json(cfg)), cfg);
}

TEST(CliConfig, MissingKeysKeepDefaults) {
  const auto cfg = qvortex::cli::from_json(nlohmann::json::object());
  EXPECT_EQ(cfg, RunConfig{});
}

TEST(CliConfig, UnknownKeyAndWrongTypeAreRejected) {
  EXPECT_THROW(qvortex::cli::from_json(nlohmann::json{{"geometri", {{"r1", 1}}}}),
               qvortex::cli::ConfigError);
  EXPECT_THROW(qvortex::cli::from_json(nlohmann::json{{"geometry", {{"r1", "one"}}}}),
               qvortex::cli::ConfigError);
  EXPECT_THROW(qvortex::cli::from_json(nlohmann::json{{"vortices", {{{"x", 1}, {"spin", 2}}}}}),
               qvortex::cli::ConfigError);
}

TEST(CliConfig, ErrorNamesTheField) {
  try {
    qvortex::cli::from_json(nlohmann::json{{"truncation", {{"max_terms", 1.5}}}});
    FAIL() << "expected ConfigError";
  } catch (const qvortex::cli::ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("truncation.max_terms"), std::string::npos) << e.what();
  }
}

TEST(CliConfig, ParseVortex) {
  const auto v = qvortex::cli::parse_vortex("1.25,-0.5,2");
  EXPECT_EQ(v, (qvortex::cli::VortexSpec{1.25, -0.5, 2.0}));
  EXPECT_THROW(qvortex::cli::parse_vortex("1,2"), qvortex::cli::ConfigError);
  EXPECT_THROW(qvortex::cli::parse_vortex("1,2,x"), qvortex::cli::ConfigError);
  EXPECT_THROW(qvortex::cli::parse_vortex("1,2,3,4"), qvortex::cli::ConfigError);
}

TEST(CliConfig, ValidateRejectsBadSystems) {
  RunConfig cfg;
  cfg.vortices = {{1.5, 0.0, 1.0}};
  EXPECT_NO_THROW(qvortex::cli::validate(cfg));

  auto bad = cfg;
  bad.vortices[0].kappa = 0.0;
  EXPECT_THROW(qvortex::cli::validate(bad), qvortex::cli::ConfigError);
  bad = cfg;
  bad.vortices[0].x = 2.5;
  EXPECT_THROW(qvortex::cli::validate(bad), qvortex::cli::ConfigError);
  bad = cfg;
  bad.r2 = 0.5;
  EXPECT_THROW(qvortex::cli::validate(bad), qvortex::cli::ConfigError);
  bad = cfg;
  bad.vortices.push_back(cfg.vortices[0]);
  EXPECT_THROW(qvortex::cli::validate(bad), qvortex::cli::ConfigError);
  bad = cfg;
  bad.representation = "fourier";
  EXPECT_THROW(qvortex::cli::validate(bad), qvortex::cli::ConfigError);
  bad = cfg;
  bad.threads = 0;
  EXPECT_THROW(qvortex::cli::validate(bad), qvortex::cli::ConfigError);
  bad = cfg;
  bad.vortices.clear();
  EXPECT_THROW(qvortex::cli::validate(bad), qvortex::cli::ConfigError);
}

TEST(CliFormat, ShortestRoundTrip) {
  EXPECT_EQ(qvortex::cli::format_double(0.1), "0.1");
  EXPECT_EQ(qvortex::cli::format_double(1e-12), "1e-12");
  EXPECT_EQ(qvortex::cli::format_double(std::nan("")), "nan");
  const double x = 0.40546510810805414;
  EXPECT_EQ(std::stod(qvortex::cli::format_double(x)), x);
}

TEST(CliRun, ValidateExamplePasses) {
  const auto r = run_cli({"validate", "--r1", "1", "--r2", "2", "--vortex", "1.4,0,1"});
  ASSERT_EQ(r.code, qvortex::cli::kOk) << r.err << r.out;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.at("pass").get<bool>());
}

TEST(CliRun, OrbitAtGeometricMeanIsAtRest) {
  const auto r = run_cli({"orbit", "--r1", "1", "--r2", "4", "--vortex", "2,0,1", "--t-end", "1",
                          "--dt", "0.001"});
  ASSERT_EQ(r.code, qvortex::cli::kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LT(std::abs(j.at("omega").get<double>()), 1e-12);
  EXPECT_TRUE(j.at("completed").get<bool>());
}

TEST(CliRun, ValidateFailsWhenLaurentTailIsTooLong) {
  // At |z0| / r2 = 0.75 the order-60 Laurent tail is still a few 1e-8 on the outer wall.
  const auto r = run_cli(with_base("validate"));
  EXPECT_EQ(r.code, qvortex::cli::kFailure);
  EXPECT_FALSE(nlohmann::json::parse(r.out).at("pass").get<bool>());
  EXPECT_EQ(run_cli(with_base("validate", {"--laurent-order", "120"})).code, qvortex::cli::kOk);
}

TEST(CliRun, ImagesContainFirstGenerations) {
  const auto r = run_cli({"images", "--r1", "1", "--r2", "4", "--vortex", "2,0,1", "--depth", "3"});
  ASSERT_EQ(r.code, qvortex::cli::kOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  std::set<double> positions;
  for (const auto& img : j) {
    EXPECT_EQ(img.at("im").get<double>(), 0.0);
    positions.insert(img.at("re").get<double>());
  }
  for (double expected : {0.5, 8.0, 0.125, 32.0}) {
    bool found = false;
    for (double p : positions) found = found || std::abs(p - expected) < 1e-12;
    EXPECT_TRUE(found) << expected;
  }
}

TEST(CliRun, ZeroStrengthExitsOne) {
  const auto r = run_cli({"validate", "--r1", "1", "--r2", "2", "--vortex", "1.5,0,0"});
  EXPECT_EQ(r.code, qvortex::cli::kFailure);
  EXPECT_NE(r.err.find("kappa"), std::string::npos) << r.err;
}

TEST(CliRun, BadArgumentsExitOne) {
  EXPECT_EQ(run_cli({}).code, qvortex::cli::kFailure);
  EXPECT_EQ(run_cli({"spin"}).code, qvortex::cli::kFailure);
  EXPECT_EQ(run_cli(with_base("validate", {"--bogus"})).code, qvortex::cli::kFailure);
  EXPECT_EQ(run_cli({"validate", "--r1", "2", "--r2", "1", "--vortex", "1.5,0,1"}).code,
            qvortex::cli::kFailure);
  EXPECT_EQ(run_cli({"validate", "--config", "/nonexistent/qvortex.json"}).code,
            qvortex::cli::kFailure);
}

TEST(CliRun, HelpExitsZero) { EXPECT_EQ(run_cli({"--help"}).code, qvortex::cli::kOk); }

TEST(CliRun, MalformedConfigExitsOne) {
  const auto path = temp_path("bad.json");
  {
    std::ofstream f(path);
    f << "{\"geometry\": {\"r1\": 1, \"r2\": }";
  }
  const auto r = run_cli({"validate", "--config", path.string()});
  EXPECT_EQ(r.code, qvortex::cli::kFailure);
  std::filesystem::remove(path);
}

TEST(CliRun, NonConvergenceExitsTwo) {
  const auto r = run_cli(
      {"validate", "--r1", "1", "--r2", "2", "--vortex", "1.99999,0,1", "--max-terms", "5"});
  EXPECT_EQ(r.code, qvortex::cli::kNotConverged) << r.err;
}

TEST(CliRun, DumpConfigRoundTripsThroughFile) {
  const auto first = run_cli(with_base("field", {"--nr", "4", "--dump-config"}));
  ASSERT_EQ(first.code, qvortex::cli::kOk) << first.err;
  const auto path = temp_path("dump.json");
  {
    std::ofstream f(path);
    f << first.out;
  }
  const auto second = run_cli({"field", "--config", path.string(), "--dump-config"});
  ASSERT_EQ(second.code, qvortex::cli::kOk) << second.err;
  EXPECT_EQ(first.out, second.out);
  EXPECT_EQ(qvortex::cli::from_json(nlohmann::json::parse(first.out)).nr, 4);
  std::filesystem::remove(path);
}

TEST(CliRun, FlagsOverrideConfigFile) {
  RunConfig cfg;
  cfg.r1 = 1.0;
  cfg.r2 = 3.0;
  cfg.vortices = {{2.0, 0.0, 1.0}};
  cfg.nr = 9;
  const auto path = temp_path("override.json");
  {
    std::ofstream f(path);
    f << qvortex::cli::to_json(cfg).dump();
  }
  const auto r = run_cli({"field", "--config", path.string(), "--r2", "4", "--dump-config"});
  ASSERT_EQ(r.code, qvortex::cli::kOk) << r.err;
  const auto got = qvortex::cli::from_json(nlohmann::json::parse(r.out));
  EXPECT_EQ(got.r2, 4.0);
  EXPECT_EQ(got.r1, 1.0);
  EXPECT_EQ(got.nr, 9);
  EXPECT_EQ(got.vortices, cfg.vortices);
  std::filesystem::remove(path);
}

TEST(CliRun, FieldHeaderAndGrid) {
  const auto r = run_cli(with_base("field", {"--nr", "3", "--ntheta", "4"}));
  ASSERT_EQ(r.code, qvortex::cli::kOk) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 2u + 3u * 4u);
  ASSERT_EQ(lines[0].rfind("# ", 0), 0u);
  const auto meta = nlohmann::json::parse(lines[0].substr(2));
  EXPECT_EQ(meta.at("representation"), "qlog");
  EXPECT_LT(meta.at("residuals").at("inner").get<double>(), 1e-9);
  EXPECT_LT(meta.at("residuals").at("outer").get<double>(), 1e-9);
  EXPECT_EQ(lines[1], "x,y,u,v,psi");
}

TEST(CliRun, FieldStreamFunctionConstantOnEachWall) {
  for (const std::string rep : {"qlog", "images", "laurent", "theta"}) {
    const auto r = run_cli(with_base("field", {"--nr", "2", "--ntheta", "8", "--representation",
                                                rep}));
    ASSERT_EQ(r.code, qvortex::cli::kOk) << rep << ": " << r.err;
    const auto lines = lines_of(r.out);
    std::vector<double> inner;
    std::vector<double> outer;
    for (std::size_t i = 2; i < lines.size(); ++i) {
      std::vector<double> row;
      std::istringstream in(lines[i]);
      for (std::string cell; std::getline(in, cell, ',');) row.push_back(std::stod(cell));
      ASSERT_EQ(row.size(), 5u);
      const double radius = std::hypot(row[0], row[1]);
      (std::abs(radius - 1.0) < 1e-12 ? inner : outer).push_back(row[4]);
    }
    ASSERT_EQ(inner.size(), 8u);
    ASSERT_EQ(outer.size(), 8u);
    for (double psi : inner) EXPECT_NEAR(psi, inner.front(), 1e-8) << rep;
    for (double psi : outer) EXPECT_NEAR(psi, outer.front(), 1e-8) << rep;
  }
}

TEST(CliRun, FieldIsDeterministicAndThreadInvariant) {
  const auto a = run_cli(with_base("field", {"--nr", "6", "--ntheta", "10"}));
  const auto b = run_cli(with_base("field", {"--nr", "6", "--ntheta", "10"}));
  const auto c = run_cli(with_base("field", {"--nr", "6", "--ntheta", "10", "--threads", "4"}));
  ASSERT_EQ(a.code, qvortex::cli::kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto la = lines_of(a.out);
  const auto lc = lines_of(c.out);
  ASSERT_EQ(la.size(), lc.size());
  // Only the metadata line records the thread count.
  for (std::size_t i = 1; i < la.size(); ++i) EXPECT_EQ(la[i], lc[i]) << i;
}

TEST(CliRun, ValidateIsDeterministic) {
  const auto a = run_cli(with_base("validate"));
  const auto b = run_cli(with_base("validate"));
  EXPECT_EQ(a.out, b.out);
}

TEST(CliRun, OrbitWritesTrajectoryToOutput) {
  const auto path = temp_path("orbit.csv");
  const auto r = run_cli(with_base(
      "orbit", {"--t-end", "0.05", "--dt", "0.01", "--output", path.string()}));
  ASSERT_EQ(r.code, qvortex::cli::kOk) << r.err;
  const auto lines = lines_of(slurp(path));
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[0], "t,x1,y1");
  EXPECT_EQ(lines[1], "0,1.5,0");
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_LT(j.at("vortices").at(0).at("radius_drift").get<double>(), 1e-10);
  std::filesystem::remove(path);
}

TEST(CliRun, OrbitHaltReportsFailure) {
  const auto r = run_cli({"orbit", "--r1", "1", "--r2", "2", "--vortex", "1.001,0,1", "--dt",
                          "0.1"});
  EXPECT_EQ(r.code, qvortex::cli::kFailure);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_FALSE(j.at("completed").get<bool>());
  EXPECT_NE(j.at("diagnostic").get<std::string>().find("halted"), std::string::npos);
}

TEST(CliRun, LimitsReportsMonotoneDecrease) {
  const auto r = run_cli({"limits", "--r1", "1", "--r2", "2", "--vortex", "1.5,0.3,1"});
  ASSERT_EQ(r.code, qvortex::cli::kOk) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 7u);
  EXPECT_EQ(lines[1],
            "q,cylinder_velocity_rel_error,disk_velocity_rel_error,cylinder_omega_rel_error,"
            "disk_omega_rel_error");
  EXPECT_NE(lines.back().find("yes"), std::string::npos);
}

}  // namespace
