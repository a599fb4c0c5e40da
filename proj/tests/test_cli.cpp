#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "dioph/cli.hpp"

namespace dioph::cli {
namespace {

struct Run {
  int rc;
  std::string out, err;
};

Run run_cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int rc = run(args, out, err);
  return {rc, out.str(), err.str()};
}

std::size_t data_rows(const std::string& csv) {
  std::size_t n = 0;
  std::istringstream in(csv);
  std::string line;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header) {
      header = true;
      continue;
    }
    ++n;
  }
  return n;
}

std::filesystem::path fresh_dir(const std::string& name) {
  const auto p = std::filesystem::temp_directory_path() / ("dioph_cli_" + name);
  std::filesystem::remove_all(p);
  return p;
}

TEST(CliHeight, Examples) {
  auto r = run_cli({"height", "--gens", "1 0 1 0; 0 1 0 1"});
  EXPECT_EQ(r.rc, kExitOk);
  EXPECT_NE(r.out.find("height_sq,4\n"), std::string::npos);
  EXPECT_NE(r.out.find("plucker,4 2 : 1 0 1 -1 0 1\n"), std::string::npos);

  r = run_cli({"height", "--plucker", "4 2 : 1 0 0 0 0 0", "--format", "json"});
  EXPECT_EQ(r.rc, kExitOk);
  EXPECT_EQ(Json::parse(r.out)["height_sq"], "1");

  r = run_cli({"height", "--gens", "1/2 0; 0 3"});
  EXPECT_NE(r.out.find("height_sq,1\n"), std::string::npos);
}

TEST(CliHeight, MalformedInput) {
  auto r = run_cli({"height", "--gens", "1 0 x 0"});
  EXPECT_EQ(r.rc, kExitParse);
  EXPECT_NE(r.err.find("column 5"), std::string::npos);

  r = run_cli({"height", "--plucker", "4 2 : 1 0 0 0 0"});
  EXPECT_EQ(r.rc, kExitParse);
  r = run_cli({"height", "--gens", "1 0; 1"});
  EXPECT_EQ(r.rc, kExitParse);
  r = run_cli({"height", "--gens", "1 sqrt2"});
  EXPECT_EQ(r.rc, kExitParse);
  r = run_cli({"height", "--bogus"});
  EXPECT_EQ(r.rc, kExitParse);
  r = run_cli({"height", "--plucker", "4 2 : 1 0 0 0 0 1"});
  EXPECT_NE(r.rc, kExitOk);
}

TEST(CliScan, CoordinatePlanesAtHeightOne) {
  const auto r = run_cli({"scan", "--target", "r4:sqrt2", "--hmax", "1", "--all"});
  EXPECT_EQ(r.rc, kExitOk);
  EXPECT_EQ(data_rows(r.out), 6u);
}

TEST(CliScan, RationalTargetFlagged) {
  const auto r = run_cli({"scan", "--target", "gens:1 0 0 0; 0 1 0 0", "--hmax", "3"});
  EXPECT_EQ(r.rc, kExitOk);
  EXPECT_NE(r.out.find("rational_target=1"), std::string::npos);
  EXPECT_NE(r.out.find("# rational target"), std::string::npos);
  EXPECT_NE(r.out.find("\n1,0,0,"), std::string::npos);
}

TEST(CliScan, DeterministicAndCacheTransparent) {
  const auto dir = fresh_dir("scan");
  const std::vector<std::string> args{"scan", "--target", "r4:sqrt2", "--hmax", "8", "--seed", "5",
                                      "--cache", dir.string()};
  const auto cold = run_cli(args);
  const auto warm = run_cli(args);
  auto other = args;
  other.insert(other.end(), {"--workers", "3"});
  const auto threaded = run_cli(other);
  EXPECT_EQ(cold.rc, kExitOk);
  EXPECT_EQ(cold.out, warm.out);
  EXPECT_EQ(cold.out, threaded.out);
  EXPECT_NE(cold.out.find("# beta_hat="), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(CliScan, CorruptCacheAborts) {
  const auto dir = fresh_dir("corrupt");
  const std::vector<std::string> args{"scan", "--target", "r4:sqrt2", "--hmax", "4", "--cache", dir.string()};
  ASSERT_EQ(run_cli(args).rc, kExitOk);
  const auto file = std::filesystem::directory_iterator(dir)->path();
  std::string text;
  {
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  const auto pos = text.find("4 2 : ", text.find('\n'));
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos + 6, 1, "7");
  std::ofstream(file) << text;
  const auto r = run_cli(args);
  EXPECT_NE(r.rc, kExitOk);
  EXPECT_NE(r.err.find("cache"), std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST(CliScan, TruncationExitCode) {
  const auto r = run_cli({"scan", "--target", "r4:sqrt2", "--hmax", "10", "--budget", "50"});
  EXPECT_EQ(r.rc, kExitTruncated);
  EXPECT_NE(r.out.find("truncated=1"), std::string::npos);
}

TEST(CliScan, BadTargetAndConfig) {
  EXPECT_EQ(run_cli({"scan", "--target", "r6:1"}).rc, kExitParse);
  EXPECT_EQ(run_cli({"scan", "--target", "r4:sqrt2", "--e", "3"}).rc, kExitError);
  EXPECT_EQ(run_cli({"scan", "--prec", "32"}).rc, kExitError);
  EXPECT_EQ(run_cli({"scan", "--format", "xml"}).rc, kExitParse);
}

TEST(CliWitness, R4Mod4) {
  const auto r = run_cli({"witness", "r4", "--xi", "sqrt2", "--mod4"});
  EXPECT_EQ(r.rc, kExitOk);
  const auto j = Json::parse(r.out);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["certificates"][0]["kind"], "r4-irrationality");
  EXPECT_TRUE(j["certificates"][0]["mod4_all_even"].get<bool>());
}

TEST(CliWitness, R4LowerBound) {
  const auto r = run_cli({"witness", "r4", "--lower-bound", "--hmax", "5", "--slices", "3"});
  EXPECT_EQ(r.rc, kExitOk);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["certificates"][0]["kind"], "lower-bound");
  EXPECT_EQ(j["certificates"][0]["slices"].size(), 1u);
}

TEST(CliWitness, R5Residuals) {
  auto r = run_cli({"witness", "r5", "--zeta3", "1.5", "--residuals", "--search", "5"});
  EXPECT_EQ(r.rc, kExitOk);
  const auto j = Json::parse(r.out);
  EXPECT_EQ(j["certificates"][0]["residuals"].size(), 5u);
  EXPECT_TRUE(j["certificates"][0]["passed"].get<bool>());
  EXPECT_TRUE(j["certificates"][1]["passed"].get<bool>());

  r = run_cli({"witness", "r5", "--zeta3", "1"});
  EXPECT_NE(r.rc, kExitOk);
  EXPECT_NE(r.err.find("5/4"), std::string::npos);
  EXPECT_EQ(run_cli({"witness", "r5", "--zeta3", "1+"}).rc, kExitParse);
}

TEST(CliDirichlet, RationalTargetStops) {
  const auto r = run_cli({"dirichlet", "--target", "gens:1 2 0 1; 0 1 1 3", "--j", "2", "--qmax", "1000"});
  EXPECT_EQ(r.rc, kExitOk);
  EXPECT_NE(r.out.find("rational=1"), std::string::npos);
  EXPECT_NE(r.out.find(",0,0\n"), std::string::npos);
}

TEST(CliDirichlet, SmallestQ) {
  const auto r = run_cli({"dirichlet", "--qmax", "1"});
  EXPECT_EQ(r.rc, kExitOk);
  EXPECT_GE(data_rows(r.out), 1u);
  EXPECT_NE(r.out.find("\n1,"), std::string::npos);
}

TEST(CliDirichlet, BoundedRatio) {
  const auto r = run_cli({"dirichlet", "--seed", "9", "--qmax", "10000", "--format", "json"});
  ASSERT_EQ(r.rc, kExitOk);
  const auto j = Json::parse(r.out);
  const Real c7 = Real::parse(j["c7"].get<std::string>(), 128);
  const Real apriori = Real::parse(j["c7_apriori"].get<std::string>(), 128);
  EXPECT_LE(c7, apriori);
  EXPECT_GE(j["rows"].size(), 3u);
}

TEST(CliGoingUp, Report) {
  auto r = run_cli({"goingup", "--target", "gens:1 0.001 0 0", "--b", "1 0 0 0", "--budget", "1"});
  EXPECT_EQ(r.rc, kExitOk);
  auto j = Json::parse(r.out);
  EXPECT_EQ(j["c"], "4 2 : 1 0 0 0 0 0");
  EXPECT_TRUE(j["contains_b"].get<bool>());

  r = run_cli({"goingup", "--seed", "4", "--kappa", "0.001"});
  EXPECT_EQ(r.rc, kExitCertificateFailed);
  j = Json::parse(r.out);
  EXPECT_FALSE(j["shape_ok"].get<bool>());
}

TEST(CliProps, AllPass) {
  const auto r = run_cli({"props", "--trials", "20"});
  EXPECT_EQ(r.rc, kExitOk);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace dioph::cli
