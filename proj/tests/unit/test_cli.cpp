#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "graphprod/cli.hpp"
#include "graphprod/config.hpp"
#include "graphprod/error.hpp"

using namespace graphprod;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code = 0;
  std::string out;
  std::string err;
};

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("graphprod_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

Result run_cli(std::vector<std::string> args) {
  std::ostringstream out;
  std::ostringstream err;
  Result r;
  r.code = run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path write_config(const fs::path& dir, const std::string& text) {
  const auto path = dir / "config.json";
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST(Cli, NormalFormOfCancellingPair) {
  const auto dir = scratch("nf");
  const auto r = run_cli({"--config", testing_support::config_path("dihedral"), "--out", dir.string(),
                          "normal-form", "v0:1 v0:1"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("normal form: 1"), std::string::npos);
  EXPECT_NE(r.out.find("lambda = 0"), std::string::npos);
  EXPECT_EQ(slurp(dir / "normal-form.csv"), "input,normal_form,lambda,ell\nv0:1 v0:1,,0,0\n");
}

TEST(Cli, VerifyLemma1OnDihedral) {
  const auto dir = scratch("lemma1");
  const auto r = run_cli({"--config", testing_support::config_path("dihedral"), "--out", dir.string(),
                          "verify-lemma1"});
  EXPECT_EQ(r.code, 0) << r.err << r.out;
  EXPECT_TRUE(fs::exists(dir / "verify-lemma1.csv"));
}

TEST(Cli, RdScanOnKleinIsDeterministic) {
  const auto a = scratch("scan_a");
  const auto b = scratch("scan_b");
  for (const auto& dir : {a, b}) {
    const auto r = run_cli({"--config", testing_support::config_path("klein"), "--out", dir.string(),
                            "--seed", "7", "rd-scan"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("0 violations"), std::string::npos);
  }
  EXPECT_EQ(slurp(a / "rd-scan.csv"), slurp(b / "rd-scan.csv"));
  EXPECT_FALSE(slurp(a / "rd-scan.csv").empty());
  const auto j = scratch("scan_json");
  const auto r = run_cli({"--config", testing_support::config_path("klein"), "--out", j.string(),
                          "--format", "json", "rd-scan"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(nlohmann::json::accept(slurp(j / "rd-scan.json")));
}

TEST(Cli, OtherSubcommands) {
  const auto dir = scratch("misc");
  const auto config = testing_support::config_path("path_integers");
  const std::vector<std::vector<std::string>> commands{
      {"sphere", "1"},
      {"divisors", "v0:1 v1:2", "1"},
      {"factor", "v0:1 v1:2", "1", "1"},
      {"factor", "v0:1 v1:2 v2:1", "1", "1", "--clique", "1"},
      {"p2", "v0:1", "v0:-1 v1:1"},
      {"verify-lemma2"},
      {"clique-constants"}};
  for (const auto& command : commands) {
    std::vector<std::string> args{"--config", config, "--out", dir.string()};
    args.insert(args.end(), command.begin(), command.end());
    const auto r = run_cli(args);
    EXPECT_EQ(r.code, 0) << command[0] << ": " << r.err;
    EXPECT_TRUE(fs::exists(dir / (command[0] + ".csv"))) << command[0];
  }
}

TEST(Cli, RefusesOutsideWindowAndBadInput) {
  const auto dir = scratch("refuse");
  const auto config = testing_support::config_path("path_integers");
  auto code = [&](std::vector<std::string> command) {
    std::vector<std::string> args{"--config", config, "--out", dir.string()};
    args.insert(args.end(), command.begin(), command.end());
    return run_cli(args);
  };
  auto r = code({"sphere", "9"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("lambda_max"), std::string::npos);
  r = code({"divisors", "v0:9", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("ell_max"), std::string::npos);
  r = code({"normal-form", "v0:x"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("column"), std::string::npos);
  EXPECT_EQ(code({"factor", "v0:1 v2:1", "1", "1", "--clique", "0,2"}).code, 2);
  EXPECT_EQ(code({"no-such-command"}).code, 2);
  EXPECT_EQ(run_cli({"sphere", "1"}).code, 2);
  EXPECT_EQ(run_cli({"--config", (dir / "missing.json").string(), "sphere", "1"}).code, 2);
}

TEST(Config, FixturesRoundTrip) {
  for (const auto& name : testing_support::fixture_names()) {
    const auto config = load_config(testing_support::config_path(name));
    EXPECT_EQ(parse_config(dump_config(config)), config) << name;
  }
}

TEST(Config, SyntaxErrorsCarryPosition) {
  try {
    parse_config("{\n  \"graph\": {\n    \"vertices\": [,]\n  }\n}\n");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3U);
    EXPECT_EQ(e.column(), 18U);
  }
}

TEST(Config, SchemaErrorsNameThePath) {
  auto message = [](const std::string& text) {
    try {
      parse_config(text);
    } catch (const Error& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  const std::string vertices = R"("graph": {"vertices": [{"group": "cyclic", "order": 2}]})";
  EXPECT_NE(message("{" + vertices + "}").find("$.window: missing"), std::string::npos);
  EXPECT_NE(message("{" + vertices + R"(, "window": {"lambda_max": 2}, "colour": 1})").find("$.colour"),
            std::string::npos);
  EXPECT_NE(message(R"({"graph": {"vertices": [{"group": "cyclic", "order": -2}]}, "window": {"lambda_max": 2}})")
                .find("$.graph.vertices[0].order"),
            std::string::npos);
  EXPECT_NE(message(R"({"graph": {"vertices": [{"group": "integers"}]}, "window": {"lambda_max": 2}})")
                .find("ell_max"),
            std::string::npos);
  EXPECT_NE(message("{" + vertices + R"(, "window": {"lambda_max": 2}, "scan": {"k_max": 3}})").find("k_max"),
            std::string::npos);
  EXPECT_NE(message(R"({"graph": {"vertices": [{"group": "cyclic", "order": 2}], "edges": [[0, 0]]}, "window": {"lambda_max": 2}})"),
            "no error");
}

TEST(Config, ScanOptionsFollowConfig) {
  const auto config = load_config(testing_support::config_path("path_integers"));
  const auto options = scan_options(config, 3);
  EXPECT_EQ(options.k_max, config.scan.k_max);
  EXPECT_EQ(options.seed, config.seed);
  EXPECT_EQ(options.constants.power.restarts, config.scan.budget);
  EXPECT_EQ(options.constants.power.threads, 3U);
}

TEST(Cli, BinaryExitCodes) {
  const auto dir = scratch("binary");
  const std::string base = std::string(GRAPHPROD_CLI) + " --config " +
                           testing_support::config_path("klein") + " --out " + dir.string();
  EXPECT_EQ(std::system((base + " sphere 1 > /dev/null").c_str()), 0);
  const int status = std::system((base + " sphere 99 > /dev/null 2>&1").c_str());
  EXPECT_TRUE(WIFEXITED(status));
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
