#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"

namespace fs = std::filesystem;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("dcb_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  int run(const std::string& args) const {
    const std::string cmd = std::string("\"") + DCB_CLI_PATH + "\" " + args + " 2>\"" +
                            (dir_ / "stderr.txt").string() + "\"";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string read(const std::string& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  std::string stderr_text() const { return read(path("stderr.txt")); }

  fs::path dir_;
};

std::string q(const std::string& s) { return "\"" + s + "\""; }

}  // namespace

TEST_F(Cli, RunWritesCsvAndIsReproducible) {
  const auto scenario = q(oracle::scenario_path("scenario_i.yaml"));
  ASSERT_EQ(run("run " + scenario + " -o " + q(path("a.csv"))), 0);
  ASSERT_EQ(run("run " + scenario + " -o " + q(path("b.csv"))), 0);
  const auto a = read(path("a.csv"));
  EXPECT_EQ(a, read(path("b.csv")));
  EXPECT_EQ(a.rfind(dcb::kCsvHeader, 0), 0u);
  EXPECT_NE(a.find("AM-AM"), std::string::npos);
  EXPECT_NE(stderr_text().find("|S|=5"), std::string::npos);
}

TEST_F(Cli, RunAlsoWritesDump) {
  ASSERT_EQ(run("run " + q(oracle::scenario_path("scenario_ii.yaml")) + " -o " + q(path("r.csv")) + " --dump " +
                q(path("d.txt"))),
            0);
  EXPECT_NE(read(path("d.txt")).find("pi="), std::string::npos);
}

TEST_F(Cli, SweepIsByteIdenticalAcrossWorkerCounts) {
  const auto spec = q(oracle::scenario_path("sweep_toy.yaml"));
  ASSERT_EQ(run("sweep " + spec + " --workers 1 -o " + q(path("1.csv"))), 0);
  ASSERT_EQ(run("sweep " + spec + " --workers 3 -o " + q(path("3.csv"))), 0);
  EXPECT_EQ(read(path("1.csv")), read(path("3.csv")));
}

TEST_F(Cli, GenerateThenRun) {
  ASSERT_EQ(run("generate " + q(oracle::scenario_path("deployment.yaml")) + " --seed 11 --wlans 3 -o " +
                q(path("g.yaml"))),
            0);
  const auto cfg = dcb::io::parse_scenario_file(path("g.yaml"));
  EXPECT_EQ(cfg.wlans.size(), 3u);
  EXPECT_EQ(run("run " + q(path("g.yaml")) + " -o " + q(path("g.csv"))), 0);
}

TEST_F(Cli, DumpCtmn) {
  ASSERT_EQ(run("dump-ctmn " + q(oracle::scenario_path("scenario_i.yaml")) + " -o " + q(path("d.txt"))), 0);
  const auto text = read(path("d.txt"));
  EXPECT_NE(text.find("states=5"), std::string::npos);
  EXPECT_NE(text.find("state 4 A[1,2]+B[3,4]"), std::string::npos);
}

TEST_F(Cli, CompareSweepOutput) {
  ASSERT_EQ(run("sweep " + q(oracle::scenario_path("sweep_toy.yaml")) + " -o " + q(path("s.csv"))), 0);
  ASSERT_EQ(run("compare " + q(path("s.csv")) + " --delta 0.5 -o " + q(path("c.csv"))), 0);
  const auto text = read(path("c.csv"));
  EXPECT_EQ(text.rfind("scenario,seed,wlan_count,am_mbps,pu_mbps,difference_mbps,outcome\n", 0), 0u);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 5);
}

TEST_F(Cli, ConfigErrorsExitOne) {
  EXPECT_EQ(run("run /nonexistent.yaml"), 1);
  EXPECT_NE(stderr_text().find("error:"), std::string::npos);
  EXPECT_EQ(run("frobnicate"), 1);
  EXPECT_EQ(run("run"), 1);
  {
    std::ofstream bad(path("bad.yaml"));
    bad << "wlans: [{name: A, ap: [0,0], stas: [[1,0]], channel: [1,2], primary: 5}]\n";
  }
  EXPECT_EQ(run("run " + q(path("bad.yaml"))), 1);
  EXPECT_NE(stderr_text().find("primary"), std::string::npos);
}

TEST_F(Cli, ModelErrorsExitTwo) {
  EXPECT_EQ(run("run " + q(oracle::scenario_path("scenario_iv.yaml")) + " --state-cap 3 -o " + q(path("x.csv"))),
            2);
  EXPECT_NE(stderr_text().find("state"), std::string::npos);
}

TEST_F(Cli, HelpExitsZero) { EXPECT_EQ(run("--help >/dev/null"), 0); }
