#include "cli.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.h"

namespace uavsim::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "uavsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = RunCli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string Reference() {
  return testing::SourcePath("scenarios/reference_3uav.json").string();
}

fs::path WriteScratchFile(const std::string& name, const std::string& text) {
  fs::path dir = testing::ScratchDir("cli_" + name);
  fs::path path = dir / name;
  std::ofstream(path) << text;
  return path;
}

TEST(CliTest, ValidateReferenceSucceeds) {
  Outcome o = Invoke({"validate", "--config", Reference()});
  EXPECT_EQ(o.code, kExitOk) << o.err;
  EXPECT_NE(o.out.find("ok"), std::string::npos);
}

TEST(CliTest, MalformedConfigIsConfigError) {
  fs::path bad = WriteScratchFile("bad.json", "{\"num_uavs\": 3,,}");
  Outcome o = Invoke({"run", "--config", bad.string()});
  EXPECT_EQ(o.code, kExitConfigError);
  EXPECT_NE(o.err.find("error [ParseError]"), std::string::npos) << o.err;
}

TEST(CliTest, InvalidConfigNamesTheInvariant) {
  fs::path bad = WriteScratchFile("neg_dt.json", R"({"num_uavs": 2, "dt": -0.1})");
  Outcome o = Invoke({"validate", "--config", bad.string()});
  EXPECT_EQ(o.code, kExitConfigError);
  EXPECT_NE(o.err.find("error [ValidationError]"), std::string::npos);
  EXPECT_NE(o.err.find("dt"), std::string::npos);
}

TEST(CliTest, MissingConfigFileIsConfigError) {
  Outcome o = Invoke({"validate", "--config", "/nonexistent/x.json"});
  EXPECT_EQ(o.code, kExitConfigError);
  EXPECT_NE(o.err.find("error [IoError]"), std::string::npos);
}

TEST(CliTest, UsageErrorsAreConfigErrors) {
  EXPECT_EQ(Invoke({}).code, kExitConfigError);
  EXPECT_EQ(Invoke({"run"}).code, kExitConfigError);
  EXPECT_EQ(Invoke({"fly", "--config", Reference()}).code, kExitConfigError);
  EXPECT_EQ(Invoke({"sweep", "--config", Reference(), "--uavs", "5..2"}).code,
            kExitConfigError);
  EXPECT_EQ(Invoke({"--help"}).code, kExitOk);
}

TEST(CliTest, RunWritesArtifacts) {
  fs::path out = testing::ScratchDir("cli_run");
  Outcome o = Invoke({"run", "--config", Reference(), "--out", out.string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  for (const char* name :
       {"metrics.csv", "trajectories.csv", "target.csv", "config.json",
        "trajectory_top_view.svg", "error_area.svg", "speed.svg"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
    EXPECT_GT(fs::file_size(out / name), 0u) << name;
  }
  // The canonical config written next to the results is itself valid.
  EXPECT_EQ(Invoke({"validate", "--config", (out / "config.json").string()}).code,
            kExitOk);
}

TEST(CliTest, SeedFlagOverridesConfig) {
  fs::path out = testing::ScratchDir("cli_seed");
  ASSERT_EQ(Invoke({"run", "--config", Reference(), "--seed", "42", "--out",
                    out.string()})
                .code,
            kExitOk);
  std::ifstream in(out / "config.json");
  std::string text((std::istreambuf_iterator<char>(in)), {});
  EXPECT_NE(text.find("\"seed\": 42"), std::string::npos) << text;
}

TEST(CliTest, OutputDirectoryFromEnvironment) {
  fs::path cfg = WriteScratchFile("no_out.json",
                                  R"({"num_uavs": 2, "max_rounds": 3})");
  fs::path env_dir = testing::ScratchDir("cli_env_out");
  ::setenv(kOutputDirEnv, env_dir.string().c_str(), 1);
  Outcome o = Invoke({"run", "--config", cfg.string()});
  ::unsetenv(kOutputDirEnv);
  ASSERT_EQ(o.code, kExitOk) << o.err;
  EXPECT_TRUE(fs::exists(env_dir / "metrics.csv"));
}

TEST(CliTest, SimulationFailureIsRuntimeError) {
  // Two UAVs a hair apart: the swarm term cannot be evaluated.
  fs::path cfg = WriteScratchFile("coincident.json", R"({
    "num_uavs": 2,
    "initial_poses": [
      {"position": [100, 0, 50], "orientation": [0, 0, 3.141592653589793]},
      {"position": [100, 1e-10, 50], "orientation": [0, 0, 3.141592653589793]}
    ]})");
  fs::path out = testing::ScratchDir("cli_runtime");
  Outcome o = Invoke({"run", "--config", cfg.string(), "--out", out.string()});
  EXPECT_EQ(o.code, kExitRuntimeError);
  EXPECT_NE(o.err.find("error [CoincidentAgents] (agent 0)"), std::string::npos)
      << o.err;
}

TEST(CliTest, SweepWritesRunDirectoriesAndPlots) {
  fs::path out = testing::ScratchDir("cli_sweep");
  Outcome o = Invoke({"sweep", "--config", Reference(), "--uavs", "1..10",
                      "--out", out.string()});
  ASSERT_EQ(o.code, kExitOk) << o.err;
  int run_dirs = 0;
  for (const auto& entry : fs::directory_iterator(out)) {
    if (entry.is_directory()) {
      ++run_dirs;
      EXPECT_TRUE(fs::exists(entry.path() / "metrics.csv"));
    }
  }
  EXPECT_EQ(run_dirs, 10);
  EXPECT_TRUE(fs::exists(out / "M01"));
  EXPECT_TRUE(fs::exists(out / "M10"));
  EXPECT_TRUE(fs::exists(out / "sweep.csv"));
  EXPECT_GT(fs::file_size(out / "errors_vs_uavs.svg"), 0u);
  EXPECT_GT(fs::file_size(out / "coverage_vs_uavs.svg"), 0u);
}

}  // namespace
}  // namespace uavsim::cli
