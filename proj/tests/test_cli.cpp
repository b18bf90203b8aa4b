#include <gtest/gtest.h>
#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "mosaic/io.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  std::string cmd = std::string(MOSAIC_CLI) + " " + args + " > /dev/null 2>&1";
  int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) { return mosaic::read_file(p.string()); }

std::size_t line_count(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("mosaic_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path write_config(const std::string& name, const std::string& text) {
    auto p = dir_ / name;
    std::ofstream(p) << text;
    return p;
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, GenerateIsByteIdenticalAcrossRunsAndThreads) {
  ASSERT_EQ(run("generate --seed 11 --threads 1 --out " + (dir_ / "a").string()), 0);
  ASSERT_EQ(run("generate --seed 11 --threads 1 --out " + (dir_ / "b").string()), 0);
  ASSERT_EQ(run("generate --seed 11 --threads 4 --out " + (dir_ / "c").string()), 0);
  for (const char* f : {"edges.csv", "truth.json", "manifest.json"}) {
    auto a = slurp(dir_ / "a" / f);
    EXPECT_FALSE(a.empty());
    EXPECT_EQ(a, slurp(dir_ / "b" / f)) << f;
    EXPECT_EQ(a, slurp(dir_ / "c" / f)) << f;
  }
  ASSERT_EQ(run("generate --seed 12 --out " + (dir_ / "d").string()), 0);
  EXPECT_NE(slurp(dir_ / "a" / "edges.csv"), slurp(dir_ / "d" / "edges.csv"));
}

TEST_F(Cli, FullyEmptiedScenarioGivesHeaderOnlyEdges) {
  auto cfg = write_config("cfg.json", R"({"scenario": {"gamma": 1.0}})");
  ASSERT_EQ(run("generate --config " + cfg.string() + " --out " + dir_.string()), 0);
  EXPECT_EQ(slurp(dir_ / "edges.csv"), "u,v,t\n");
  auto truth = nlohmann::json::parse(slurp(dir_ / "truth.json"));
  EXPECT_TRUE(truth.at("mosaics").empty());
}

TEST_F(Cli, ExitCodes) {
  EXPECT_EQ(run(""), 2);
  EXPECT_EQ(run("frobnicate"), 2);
  EXPECT_EQ(run("generate --window -1"), 2);
  EXPECT_EQ(run("generate --config " + (dir_ / "missing.json").string()), 3);
  auto bad = write_config("bad.json", "{oops");
  EXPECT_EQ(run("generate --config " + bad.string() + " --out " + dir_.string()), 2);
  auto invalid = write_config("invalid.json", R"({"edges": {"alpha": 2}})");
  EXPECT_EQ(run("generate --config " + invalid.string() + " --out " + dir_.string()), 2);
  EXPECT_EQ(run("evaluate --edges " + (dir_ / "none.csv").string() + " --truth " + (dir_ / "none.json").string()), 3);
  EXPECT_EQ(run("evaluate --method nope"), 2);
}

TEST_F(Cli, ValidateAcceptsGoodAndRejectsOverlaps) {
  ASSERT_EQ(run("generate --seed 3 --out " + dir_.string()), 0);
  EXPECT_EQ(run("validate --truth " + (dir_ / "truth.json").string() + " --edges " + (dir_ / "edges.csv").string()), 0);
  auto overlap = write_config("overlap.json", R"({"nodes": 2, "t_start": 0, "t_end": 10, "mosaics": [
    {"id": 3, "nodes": [0, 1], "t_start": 0, "t_end": 5},
    {"id": 8, "nodes": [1], "t_start": 4, "t_end": 8}]})");
  EXPECT_EQ(run("validate --truth " + overlap.string()), 2);
}

TEST_F(Cli, PipelineOutputs) {
  auto out = dir_.string();
  ASSERT_EQ(run("generate --seed 5 --out " + out), 0);
  auto edges = (dir_ / "edges.csv").string();
  auto truth = (dir_ / "truth.json").string();

  ASSERT_EQ(run("aggregate --edges " + edges + " --truth " + truth + " --out " + out), 0);
  auto snaps = slurp(dir_ / "snapshots.csv");
  EXPECT_EQ(snaps.substr(0, snaps.find('\n')), "window,t_start,t_end,u,v,weight");

  ASSERT_EQ(run("detect --edges " + edges + " --truth " + truth + " --method no_smoothing,smoothed_graph --out " + out), 0);
  // 50 windows x 100 nodes plus header
  EXPECT_EQ(line_count(slurp(dir_ / "no_smoothing.csv")), 5001u);
  EXPECT_TRUE(fs::exists(dir_ / "smoothed_graph.csv"));
  EXPECT_FALSE(fs::exists(dir_ / "label_smoothing.csv"));

  ASSERT_EQ(run("evaluate --edges " + edges + " --truth " + truth + " --out " + out), 0);
  auto report = slurp(dir_ / "report.csv");
  EXPECT_EQ(line_count(report), 5u);
  EXPECT_EQ(report.substr(0, report.find('\n')), "method,mean_nmi,mosaic_nmi,sm_p,sm_n,sm_l");

  ASSERT_EQ(run("stats --edges " + edges + " --truth " + truth), 0);
}

TEST_F(Cli, SweepProducesAllRows) {
  ASSERT_EQ(run("sweep --seed 1 --threads 2 --out " + dir_.string()), 0);
  auto rows = slurp(dir_ / "sweep.csv");
  EXPECT_EQ(line_count(rows), 241u);
  EXPECT_EQ(rows.substr(0, rows.find('\n')), "phi,seed,method,mean_nmi,sm_p,sm_n,sm_l");
  EXPECT_EQ(line_count(slurp(dir_ / "sweep_summary.csv")), 25u);

  ASSERT_EQ(run("sweep --seed 1 --threads 1 --phi 0,0.5 --method implicit_global --out " + (dir_ / "s").string()), 0);
  auto small = slurp(dir_ / "s" / "sweep.csv");
  EXPECT_EQ(line_count(small), 21u);
  // the same (phi, seed, method) rows as in the full, multi-threaded sweep
  std::istringstream is(small);
  std::string line;
  std::getline(is, line);
  while (std::getline(is, line)) EXPECT_NE(rows.find(line + "\n"), std::string::npos) << line;
}
