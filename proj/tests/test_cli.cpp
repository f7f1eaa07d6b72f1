#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ssc/cli.hpp"
#include "ssc/exactq.hpp"

namespace fs = std::filesystem;
using ssc::cli::run;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;

  // Value of a "key: value" line, or "" if absent.
  std::string get(const std::string& key) const {
    std::istringstream s(out);
    std::string line;
    while (std::getline(s, line))
      if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
    return "";
  }

  std::string without_duration() const {
    std::istringstream s(out);
    std::string line, kept;
    while (std::getline(s, line))
      if (line.rfind("duration_s: ", 0) != 0) kept += line + "\n";
    return kept;
  }
};

Outcome ssc_run(std::vector<std::string> args) {
  args.insert(args.begin(), "ssc");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("ssc_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) {
    const auto p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, SpectrumOfExtremalSevenVertexGraph) {
  std::string text = "7 17\n1 2\n3 4\n";
  for (int c = 5; c <= 7; ++c)
    for (int v = 1; v < c; ++v) text += std::to_string(v) + " " + std::to_string(c) + "\n";
  const auto r = ssc_run({"spectrum", write("k722.txt", text)});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.get("spectral_sum")), 6.0, 1e-12);
}

TEST_F(CliTest, SpectrumOfEmptyGraphAndPath) {
  auto r = ssc_run({"spectrum", write("e3.txt", "3 0\n")});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(std::stod(r.get("spectral_sum")), 0.0);
  r = ssc_run({"spectrum", write("p4.txt", "4 3\n1 2\n2 3\n3 4\n")});
  EXPECT_NEAR(std::stod(r.get("spectral_sum")), std::sqrt(5.0), 1e-12);
}

TEST_F(CliTest, SpectrumParseErrorReportsLine) {
  const auto r = ssc_run({"spectrum", write("bad.txt", "3 2\n1 2\n1 9\n")});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
}

TEST_F(CliTest, MissingFileIsUsageError) {
  EXPECT_EQ(ssc_run({"spectrum", path("nope.txt")}).code, 2);
  EXPECT_EQ(ssc_run({"verify", path("nope.cert")}).code, 2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(ssc_run({}).code, 2);
  EXPECT_EQ(ssc_run({"frobnicate"}).code, 2);
  EXPECT_EQ(ssc_run({"search", "5"}).code, 2);
  EXPECT_EQ(ssc_run({"search", "5", "--max", "--min-connected"}).code, 2);
  EXPECT_EQ(ssc_run({"search", "12", "--max"}).code, 2);
  EXPECT_EQ(ssc_run({"optimize", "Q7"}).code, 2);
  EXPECT_EQ(ssc_run({"optimize", "P3", "--weights", "1/2,1/2"}).code, 2);
  EXPECT_EQ(ssc_run({"certify", "H6", "--bound", "8/0"}).code, 2);
  EXPECT_EQ(ssc_run({"--help"}).code, 0);
}

TEST_F(CliTest, SearchMaxFive) {
  const auto r = ssc_run({"search", "5", "--max"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.get("conjecture"), "K(5,2,1)");
  EXPECT_EQ(r.get("conjecture_match"), "yes");
  EXPECT_EQ(r.get("optimizer_degrees"), "4,4,3,3,2");
}

TEST_F(CliTest, SearchMinConnectedFour) {
  const auto r = ssc_run({"search", "4", "--min-connected"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.get("graphs_examined"), "38");
  EXPECT_FALSE(r.get("value").empty());
}

TEST_F(CliTest, OptimizePathReport) {
  const auto r = ssc_run({"optimize", "P3", "--restarts", "20", "--seed", "4"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.get("sigma")), 8.0 / 7, 1e-6);
  EXPECT_EQ(r.get("adjacency_criterion"), "consistent");
  EXPECT_NE(r.get("kappa_1_3").find("non-edge ok"), std::string::npos);
  EXPECT_EQ(r.get("true_twins"), "none");
}

TEST_F(CliTest, OptimizeAtGivenWeights) {
  const auto r = ssc_run({"optimize", "P3", "--weights", "2/7,3/7,0.285714285714285714"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NEAR(std::stod(r.get("sigma")), 8.0 / 7, 1e-12);
  EXPECT_NEAR(std::stod(r.get("mu1")), 6.0 / 7, 1e-12);
}

TEST_F(CliTest, DeterministicUnderSeed) {
  const auto a = ssc_run({"optimize", "H5", "--restarts", "10", "--seed", "12"});
  const auto b = ssc_run({"optimize", "H5", "--restarts", "10", "--seed", "12"});
  EXPECT_EQ(a.without_duration(), b.without_duration());
}

TEST_F(CliTest, SeedFallsBackToEnvironment) {
  ::setenv("SSC_SEED", "77", 1);
  const auto r = ssc_run({"optimize", "P3", "--restarts", "2"});
  ::unsetenv("SSC_SEED");
  EXPECT_EQ(r.get("seed"), "77");
  EXPECT_EQ(ssc_run({"optimize", "P3", "--restarts", "2"}).get("seed"), "0");
  ::setenv("SSC_SEED", "abc", 1);
  EXPECT_EQ(ssc_run({"optimize", "P3", "--restarts", "2"}).code, 2);
  ::unsetenv("SSC_SEED");
}

TEST_F(CliTest, CertifyThenVerify) {
  const std::string cert = path("h6.cert");
  const auto c = ssc_run({"certify", "H6", "--bound", "8/7", "-o", cert});
  ASSERT_EQ(c.code, 0) << c.out << c.err;
  EXPECT_EQ(c.get("verdict"), "PASS");
  const auto v = ssc_run({"verify", cert});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(v.get("identity"), "holds");
  EXPECT_EQ(v.get("psd"), "PSD");
  EXPECT_EQ(v.get("verdict"), "PASS");
}

TEST_F(CliTest, VerifyCorruptedFileFails) {
  const std::string cert = path("h6.cert");
  ASSERT_EQ(ssc_run({"certify", "H6", "-o", cert}).code, 0);
  std::ifstream in(cert);
  std::vector<std::string> lines;
  for (std::string l; std::getline(in, l);) lines.push_back(l);
  // Q(1,1) is the first entry on line 4; bump it by 1/10^6.
  const auto space = lines[3].find(' ');
  const ssc::Rational bumped = ssc::parse_rational(lines[3].substr(0, space)) + ssc::frac(1, 1000000);
  lines[3] = ssc::to_string(bumped) + lines[3].substr(space);
  std::string text;
  for (const auto& l : lines) text += l + "\n";
  const auto r = ssc_run({"verify", write("bad.cert", text)});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.get("identity"), "violated");
  EXPECT_EQ(r.get("violation").rfind("coefficient 1 entry (1,1)", 0), 0u) << r.out;
  EXPECT_EQ(r.get("psd"), "PSD");
  EXPECT_EQ(r.get("verdict"), "FAIL");
}

TEST_F(CliTest, VerifyNotPsdReportsWitness) {
  // Satisfies every coefficient equation of K2 at c = 1 with T = 2, but Q_00 < 0.
  const auto r = ssc_run({"verify", write("k2.cert", "candidate K2\nbound 1\n2 1 3\n-1 0 0\n0 1 0\n0 0 1\n2\n")});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.get("identity"), "holds");
  EXPECT_EQ(r.get("psd"), "NOT_PSD");
  EXPECT_EQ(r.get("witness"), "1,0,0");
  EXPECT_EQ(r.get("witness_value"), "-1");
}

TEST_F(CliTest, CertifyTrivialAndNotFound) {
  const std::string cert = path("k2.cert");
  auto r = ssc_run({"certify", "K2", "--bound", "1", "-o", cert});
  EXPECT_EQ(r.code, 0);
  std::ifstream in(cert);
  std::stringstream body;
  body << in.rdbuf();
  EXPECT_EQ(body.str(), "candidate K2\nbound 1\n2 1 3\n0 0 0\n0 0 0\n0 0 0\n1\n");
  r = ssc_run({"certify", "H6", "--bound", "9/8", "--max-iter", "2000"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.get("verdict"), "NOT_FOUND");
  EXPECT_EQ(r.get("failed_stage"), "sdp_solve");
}

TEST_F(CliTest, CompoundCommand) {
  const std::string m = write("m.txt", "3\n1 2 0\n2 1/2 1/3\n0 1/3 -1\n");
  auto r = ssc_run({"compound", m, "1"});
  EXPECT_EQ(r.get("row_2"), "2 1/2 1/3");
  r = ssc_run({"compound", m, "3"});
  EXPECT_EQ(r.get("dimension"), "1");
  EXPECT_EQ(r.get("row_1"), "1/2");
  r = ssc_run({"compound", m, "2"});
  EXPECT_EQ(r.get("equals_psi"), "yes");
  EXPECT_EQ(r.get("row_1"), "3/2 1/3 0");
  EXPECT_EQ(ssc_run({"compound", m, "4"}).code, 2);
  EXPECT_EQ(ssc_run({"compound", write("bad.txt", "2\n1 2\n"), "1"}).code, 2);
}

TEST_F(CliTest, TableMode) {
  const auto r = ssc_run({"search", "3", "--max", "--table"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("$ ssc search 3 --max --table", 0), 0u);
  EXPECT_NE(r.out.find("results\n"), std::string::npos);
}
