#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "pseudoreg/cli.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "pseudoreg");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = pseudoreg::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, SublinesReport) {
  const auto r = run({"sublines", "--p", "3", "--e", "1", "--t", "3", "--nu", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["total"], 26);
  EXPECT_EQ(j["formula_value"], 26);
  EXPECT_EQ(j["agree"], true);
  EXPECT_EQ(j["by_family"]["1"]["count"], 13);
  EXPECT_EQ(j["by_family"]["2"]["preimage_order"], 2);
  EXPECT_TRUE(j.contains("f") && j.contains("g"));
}

TEST(Cli, VerifyMainExhaustive) {
  const auto r = run({"verify-main", "--p", "3", "--e", "1", "--t", "3", "--exhaustive"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["imaginary_centers"], 432);
  EXPECT_EQ(j["imaginary_pass"], 432);
  EXPECT_EQ(j["discrepancies"], 0);
}

TEST(Cli, CountsFormulaOnly) {
  const auto r = run({"counts", "--p", "5", "--e", "1", "--t", "5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["subline_count_formula"], 81224);
  EXPECT_EQ(j["K_identities"], true);
  EXPECT_FALSE(j.contains("subline_count_enumerated"));
}

TEST(Cli, CsvSchema) {
  const auto r = run({"counts", "--p", "3", "--t", "3", "--format", "csv"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "q,t,N1,N2,subline_count_formula,subline_count_enumerated,agree\n3,3,12,507,26,,true\n");
  const auto s = run({"sublines", "--p", "3", "--t", "3", "--format", "csv"});
  EXPECT_EQ(s.out, "q,t,N1,N2,subline_count_formula,subline_count_enumerated,agree\n3,3,12,507,26,26,true\n");
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(run({"sublines", "--p", "2", "--t", "3"}).code, 2);
  // Below q = t the structured census misses sublines: exit 1, not a crash.
  const auto low = run({"sublines", "--p", "2", "--t", "3", "--allow-out-of-hypothesis"});
  EXPECT_EQ(low.code, 1);
  EXPECT_EQ(json::parse(low.out)["algorithm_a_total"], 35);
  EXPECT_EQ(json::parse(low.out)["total"], 14);
  EXPECT_EQ(run({"verify-main", "--p", "2", "--t", "3"}).code, 2);
  EXPECT_EQ(run({"sublines", "--p", "3", "--t", "3", "--nu", "3"}).code, 2);
  EXPECT_EQ(run({"sublines", "--p", "4", "--t", "3"}).code, 2);
  EXPECT_EQ(run({"nosuch"}).code, 2);
  EXPECT_EQ(run({"counts", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, FlagsOverrideEnvironment) {
  ::setenv("PSEUDOREG_P", "2", 1);
  ::setenv("PSEUDOREG_E", "2", 1);
  auto j = json::parse(run({"counts", "--t", "3"}).out);
  EXPECT_EQ(j["q"], 4);
  j = json::parse(run({"counts", "--t", "3", "--p", "3", "--e", "1"}).out);
  EXPECT_EQ(j["q"], 3);
  ::unsetenv("PSEUDOREG_P");
  ::unsetenv("PSEUDOREG_E");
  j = json::parse(run({"counts", "--t", "3"}).out);
  EXPECT_EQ(j["q"], 3);
}

TEST(Cli, ReportIndependentOfThreads) {
  std::string first;
  for (const char* th : {"1", "4", "16"}) {
    const auto r = run({"sublines", "--p", "2", "--e", "2", "--t", "4", "--threads", th});
    ASSERT_EQ(r.code, 0);
    if (first.empty()) first = r.out;
    EXPECT_EQ(r.out, first) << th;
  }
  std::string splash;
  for (const char* th : {"1", "4"}) {
    const auto r = run({"splash", "--p", "3", "--t", "4", "--samples", "30", "--threads", th});
    ASSERT_EQ(r.code, 0) << r.err;
    if (splash.empty()) splash = r.out;
    EXPECT_EQ(r.out, splash);
  }
}

TEST(Cli, OutFileAndPolynomialOverride) {
  const auto path = std::filesystem::temp_directory_path() / "pseudoreg_cli_test.json";
  const auto r = run({"sublines", "--p", "3", "--t", "3", "--g-poly", "1,2,0,1", "--out", path.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  const auto j = json::parse(f);
  EXPECT_EQ(j["g"], "1,2,0,1");
  EXPECT_EQ(j["total"], 26);
  std::filesystem::remove(path);
}

TEST(Cli, OtherCommands) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"hypersurface", "--p", "3", "--t", "3"},
           {"powers", "--p", "2", "--e", "2", "--t", "3"},
           {"nrc", "--p", "5", "--t", "3"},
           {"splash", "--p", "3", "--t", "3"},
           {"verify-main", "--p", "3", "--t", "4", "--samples", "20"}}) {
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << args[0] << " " << r.err << r.out;
    EXPECT_EQ(json::parse(r.out)["ok"], true);
  }
  EXPECT_EQ(run({"nrc", "--p", "3", "--t", "3"}).code, 2);
  EXPECT_EQ(run({"nrc", "--p", "3", "--t", "3", "--allow-out-of-hypothesis"}).code, 0);
}
