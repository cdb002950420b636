#include <gtest/gtest.h>

#include <cstdio>
#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "entropic/cli.hpp"
#include "entropic/serialization.hpp"

using entropic::cli::run;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(ENTROPIC_DATA_DIR) + "/" + name; }

bool contains(const std::string& hay, const std::string& needle) { return hay.find(needle) != std::string::npos; }

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("entropic_cli_" + name);
}

}  // namespace

TEST(Cli, EntropyOfHegarty) {
  auto r = cli({"entropy", data("hegarty.json")});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "H = 3.000000 bits\n");
}

TEST(Cli, EntropyInNats) {
  auto r = cli({"--base", "nats", "entropy", data("z4.json")});
  EXPECT_EQ(r.status, 0);
  EXPECT_EQ(r.out, "H = 1.386294 nats\n");
}

TEST(Cli, SelfEnergyOfU012) {
  auto r = cli({"energy", "self", data("u012.json")});
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(contains(r.out, "A{X} = 4.142690 bits")) << r.out;
  EXPECT_TRUE(contains(r.out, "s{X} = 0.612197 bits")) << r.out;
}

TEST(Cli, EnergyKinds) {
  auto add = cli({"energy", "add", data("hegarty.json"), data("hegarty_neg.json")});
  EXPECT_EQ(add.status, 0);
  EXPECT_TRUE(contains(add.out, "7.492951")) << add.out;
  auto mul = cli({"energy", "mul", data("fp5_star_mult.json"), data("fp5_star_mult.json")});
  EXPECT_EQ(mul.status, 0);
  EXPECT_TRUE(contains(mul.out, "6.000000")) << mul.out;
  auto dbl = cli({"--format", "json", "energy", "doubling", data("u012.json")});
  EXPECT_EQ(dbl.status, 0);
  auto j = nlohmann::json::parse(dbl.out);
  EXPECT_NEAR(j["values"]["s{X}"].get<double>(), 0.612197, 1e-6) << dbl.out;
}

TEST(Cli, MismatchedSpecsExitTwo) {
  auto r = cli({"energy", "add", data("hegarty.json"), data("z4.json")});
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(contains(r.err, "SpecMismatch")) << r.err;
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, ParseErrorsNameTheField) {
  auto path = temp_path("bad.json");
  {
    std::ofstream f(path);
    f << R"({"spec": {"kind": "Integers"}, "arity": 1, "probs": [[["1"], "1/0"]]})";
  }
  auto r = cli({"entropy", path.string()});
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(contains(r.err, "ParseError")) << r.err;
  EXPECT_TRUE(contains(r.err, "probs[0][1]")) << r.err;
  std::filesystem::remove(path);
  EXPECT_EQ(cli({"entropy", data("does_not_exist.json")}).status, 2);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).status, 2);
  EXPECT_EQ(cli({"frobnicate"}).status, 2);
  EXPECT_EQ(cli({"--tol", "0", "entropy", data("z4.json")}).status, 2);
  EXPECT_EQ(cli({"--base", "decibels", "entropy", data("z4.json")}).status, 2);
  EXPECT_EQ(cli({"verify", "--suite", "NOT_A_LAW"}).status, 2);
}

TEST(Cli, VerifyZeroTrialsExitTwo) {
  auto r = cli({"verify", "--suite", "SUBMOD", "--trials", "0"});
  EXPECT_EQ(r.status, 2);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, VerifyLemmaA2) {
  auto r = cli({"verify", "--suite", "LEM_A2", "--trials", "50"});
  EXPECT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  ASSERT_EQ(j["laws"].size(), 1u);
  EXPECT_EQ(j["laws"][0]["id"], "LEM_A2");
  EXPECT_EQ(j["laws"][0]["failures"], 0);
  EXPECT_GE(j["laws"][0]["minSlack"].get<double>(), -1e-9);
  EXPECT_EQ(j["theoremFailures"], 0);
}

TEST(Cli, VerifyProbeFailuresDoNotFailTheRun) {
  auto r = cli({"verify", "--suite", "CS_PROBE,SUBADD", "--trials", "5", "--battery-only"});
  EXPECT_EQ(r.status, 0);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_GE(j["laws"][0]["failures"].get<int>(), 1);
}

TEST(Cli, VerifyIsDeterministic) {
  std::vector<std::string> args = {"--seed", "7", "verify", "--suite", "NAIVE_FWD,BSG,PR", "--trials", "20"};
  auto a = cli(args);
  auto b = cli(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, ReproduceTargets) {
  auto h = cli({"reproduce", "hegarty", "--format", "text"});
  EXPECT_EQ(h.status, 0);
  for (const char* v : {"4.507", "4.513", "7.493", "7.487"}) EXPECT_TRUE(contains(h.out, v)) << v;
  EXPECT_EQ(cli({"reproduce", "sidon012"}).status, 0);
  auto nats = cli({"--base", "nats", "reproduce", "sidon012", "--format", "text"});
  EXPECT_TRUE(contains(nats.out, "s{X} = 0.424343 nats")) << nats.out;
  EXPECT_EQ(cli({"reproduce", "subfield", "--q", "13"}).status, 0);
  auto bad = cli({"reproduce", "subfield", "--q", "4"});
  EXPECT_EQ(bad.status, 2);
  EXPECT_TRUE(contains(bad.err, "NonPrimeQ")) << bad.err;
}

TEST(Cli, SumproductCsv) {
  std::vector<std::string> args = {"scan", "sumproduct", "--p", "11", "--max-support", "5", "--mode", "exhaustive"};
  auto a = cli(args);
  EXPECT_EQ(a.status, 0);
  EXPECT_EQ(a.out.rfind("descriptor,H,A,M,ratio,flags\n", 0), 0u) << a.out.substr(0, 80);
  // 10 + 45 + 120 + 210 + 252 subsets of F_11^* of size at most 5, plus the header.
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 638);
  EXPECT_EQ(a.out, cli(args).out);
}

TEST(Cli, ScanErrorsExitTwo) {
  EXPECT_EQ(cli({"scan", "sumproduct", "--p", "12"}).status, 2);
  EXPECT_EQ(cli({"scan", "sumproduct", "--p", "11", "--max-support", "20"}).status, 2);
  EXPECT_EQ(cli({"scan", "cs", "--lo", "-20", "--hi", "0", "--size", "3"}).status, 2);
  EXPECT_EQ(cli({"scan", "gk", "--p", "7", "--k", "1"}).status, 2);
}

TEST(Cli, ScanGkAndReal) {
  auto gk = cli({"--format", "json", "scan", "gk", "--p", "5", "--k", "1", "--uniform", "1,2,3,4"});
  EXPECT_EQ(gk.status, 0) << gk.err;
  auto j = nlohmann::json::parse(gk.out);
  EXPECT_NEAR(j["values"]["lhs"].get<double>(), 2.0, 1e-9) << gk.out;
  auto real = cli({"scan", "real", "--family", "geom", "--max-size", "4"});
  EXPECT_EQ(real.status, 0);
  EXPECT_EQ(real.out.rfind("# ", 0), 0u);
  EXPECT_TRUE(contains(real.out, "running_max")) << real.out;
}

TEST(Cli, OutFileReceivesReport) {
  auto path = temp_path("out.json");
  std::filesystem::remove(path);
  auto r = cli({"--out", path.string(), "--format", "json", "reproduce", "hegarty"});
  EXPECT_EQ(r.status, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  auto j = nlohmann::json::parse(buf.str());
  EXPECT_TRUE(j.contains("values"));
  std::filesystem::remove(path);
}

TEST(Cli, NoReportFileOnError) {
  auto path = temp_path("never.json");
  std::filesystem::remove(path);
  auto r = cli({"--out", path.string(), "reproduce", "subfield", "--q", "9"});
  EXPECT_EQ(r.status, 2);
  EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(Cli, DataDirectoryFallback) {
  auto r = cli({"entropy", "hegarty.json"});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "H = 3.000000 bits\n");
}
