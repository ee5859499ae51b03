#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "harmonic/cli.hpp"

using namespace harmonic;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "harmonic_lab");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_dir() {
  auto p = std::filesystem::temp_directory_path() / "harmonic_cli_test";
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST(Cli, PlancherelOnNPasses) {
  const CliRun r = cli({"plancherel", "--group", "N", "--n", "2", "--fn", "gaussian"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["identity"], "n-plancherel");
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_LE(j["rel_error"].get<double>(), 1e-6);
}

TEST(Cli, NaiveLawExitsOneWithWitness) {
  const CliRun r = cli({"axioms", "--law", "glminus-naive", "--n", "2"});
  EXPECT_EQ(r.code, 1);
  const auto j = nlohmann::json::parse(r.out);
  bool found = false;
  for (const auto& a : j["results"]) {
    if (a["axiom"] == "associativity") {
      found = true;
      EXPECT_EQ(a["witness"]["inputs"][0], nlohmann::json::parse("[[0.0,1.0],[1.0,0.0]]"));
    }
  }
  EXPECT_TRUE(found);
}

TEST(Cli, DecomposeIdentity) {
  const CliRun r = cli({"decompose", "--matrix", "[[1,0],[0,1]]"});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  const auto id = nlohmann::json::parse("[[1.0,0.0],[0.0,1.0]]");
  EXPECT_EQ(j["k"], id);
  EXPECT_EQ(j["a"], id);
  EXPECT_EQ(j["n"], id);
}

TEST(Cli, UsageAndConfigErrorsExitTwo) {
  EXPECT_EQ(cli({"plancherel", "--bogus"}).code, 2);
  EXPECT_EQ(cli({"plancherel", "--group", "Sp"}).code, 2);
  EXPECT_EQ(cli({"decompose", "--matrix", "[[2,0],[0,2]]"}).code, 2);
  EXPECT_EQ(cli({"--config", "/nonexistent.toml", "plancherel", "--group", "N"}).code, 2);
  const auto bad = temp_dir() / "bad.toml";
  std::ofstream(bad) << "[grids]\nnope = 1\n";
  EXPECT_EQ(cli({"--config", bad.string(), "plancherel", "--group", "N"}).code, 2);
  EXPECT_EQ(cli({}).code, 2);
}

TEST(Cli, ListEnumeratesIdentitiesAndLaws) {
  const CliRun r = cli({"--list"});
  EXPECT_EQ(r.code, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_GE(j["identities"].size(), 18u);
  EXPECT_EQ(j["laws"].size(), 6u);
}

TEST(Cli, TransformThenInvertAtIdentity) {
  const auto dir = temp_dir();
  const auto prefix = (dir / "sl2").string();
  const CliRun t = cli({"transform", "--group", "SL", "--out", prefix});
  ASSERT_EQ(t.code, 0) << t.err;
  {
    std::ofstream(prefix + ".json") << t.out;
  }
  const CliRun inv = cli({"invert", "--summary", prefix + ".json", "--csv", prefix + ".csv", "--point", "0,0,0"});
  ASSERT_EQ(inv.code, 0) << inv.err;
  const auto j = nlohmann::json::parse(inv.out);
  // Standard separable χ = 1 + ½e^{2iθ} at the identity: 1.5.
  EXPECT_NEAR(j["identity"][0].get<double>(), 1.5, 1e-3);
  EXPECT_NEAR(j["value"][0].get<double>(), 1.5, 1e-3);
}

TEST(Cli, SeedOverrideChangesFingerprintOnlyThroughConfig) {
  const CliRun a = cli({"--seed", "5", "plancherel", "--group", "SO2"});
  const CliRun b = cli({"--seed", "5", "plancherel", "--group", "SO2"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(nlohmann::json::parse(a.out)["seed"], 5);
}

TEST(Cli, OutWritesJsonFile) {
  const auto path = (temp_dir() / "report.json").string();
  std::filesystem::remove(path);
  const CliRun r = cli({"--out", path, "plancherel", "--group", "scale"});
  EXPECT_EQ(r.code, 0);
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  EXPECT_EQ(nlohmann::json::parse(in)["identity"], "scale-parseval");
}
