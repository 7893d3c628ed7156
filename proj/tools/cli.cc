#include "cli.h"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "CLI11.hpp"
#include "uavsim/engine.h"
#include "uavsim/errors.h"
#include "uavsim/report.h"
#include "uavsim/scenario.h"
#include "uavsim/sweep.h"

namespace uavsim::cli {
namespace {

namespace fs = std::filesystem;

struct UavRange {
  int min = 0;
  int max = 0;
};

// "<min>..<max>" with 1 <= min <= max, or a single count.
std::optional<UavRange> ParseRange(std::string_view text) {
  auto parse_int = [](std::string_view s) -> std::optional<int> {
    int value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
  };
  UavRange range;
  if (auto dots = text.find(".."); dots != std::string_view::npos) {
    auto lo = parse_int(text.substr(0, dots));
    auto hi = parse_int(text.substr(dots + 2));
    if (!lo || !hi) return std::nullopt;
    range = {*lo, *hi};
  } else {
    auto n = parse_int(text);
    if (!n) return std::nullopt;
    range = {*n, *n};
  }
  if (range.min < 1 || range.max < range.min) return std::nullopt;
  return range;
}

fs::path ResolveOutputDir(const std::string& flag,
                          const ScenarioConfig& config) {
  if (!flag.empty()) return flag;
  if (!config.output_dir.empty()) return config.output_dir;
  if (const char* env = std::getenv(kOutputDirEnv); env && *env) return env;
  return "out";
}

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  file << text;
  if (!file) throw IoError("cannot write " + path.string());
}

void ReportError(std::ostream& err, const Error& e) {
  err << "error [" << e.name() << "]";
  if (auto* sim = dynamic_cast<const SimulationError*>(&e);
      sim && sim->agent_id()) {
    err << " (agent " << *sim->agent_id() << ")";
  }
  if (auto* parse = dynamic_cast<const ParseError*>(&e); parse && parse->line()) {
    err << " (line " << *parse->line() << ")";
  }
  err << ": " << e.what() << "\n";
}

// Config errors (including an unreadable file) map to exit code 1.
std::optional<ScenarioConfig> Load(const std::string& path, std::ostream& err) {
  try {
    return LoadConfig(path);
  } catch (const Error& e) {
    ReportError(err, e);
    return std::nullopt;
  }
}

int RunOne(const ScenarioConfig& config, const fs::path& dir,
           std::ostream& out) {
  RunLog log = Run(config);
  fs::create_directories(dir);
  EmitCsv(log, dir);
  EmitPlots(log, dir);
  WriteText(dir / "config.json", CanonicalConfigText(config));
  out << "rounds " << log.records.size() - 1 << ", converged_round ";
  if (log.converged_round) {
    out << *log.converged_round;
  } else {
    out << "none";
  }
  out << ", output " << dir.string() << "\n";
  return kExitOk;
}

int RunSweepCommand(const ScenarioConfig& base, const UavRange& range,
                    int rounds, const fs::path& dir, std::ostream& out) {
  std::vector<SweepRun> runs = RunSweep(base, range.min, range.max, rounds);
  fs::create_directories(dir);
  for (const SweepRun& run : runs) {
    char name[16];
    std::snprintf(name, sizeof(name), "M%02d", run.point.num_uavs);
    fs::path sub = dir / name;
    fs::create_directories(sub);
    EmitCsv(run.log, sub);
    EmitPlots(run.log, sub);
    WriteText(sub / "config.json", CanonicalConfigText(run.config));
  }
  EmitSweepCsv(runs, dir);
  EmitSweepPlots(runs, dir);
  out << "swept M = " << range.min << ".." << range.max << ", output "
      << dir.string() << "\n";
  return kExitOk;
}

}  // namespace

int RunCli(int argc, const char* const* argv, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Multi-UAV visual servoing swarm simulator", "uavsim"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  std::string uavs = "1..10";
  int rounds = 200;

  CLI::App* run = app.add_subcommand("run", "Simulate one scenario");
  run->add_option("--config", config_path, "Scenario file")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out", out_dir, "Output directory");

  CLI::App* sweep =
      app.add_subcommand("sweep", "Run the scenario for a range of UAV counts");
  sweep->add_option("--config", config_path, "Base scenario file")->required();
  sweep->add_option("--uavs", uavs, "UAV counts as <min>..<max>");
  sweep->add_option("--rounds", rounds, "Rounds per run")
      ->check(CLI::NonNegativeNumber);
  sweep->add_option("--out", out_dir, "Output directory");

  CLI::App* validate = app.add_subcommand("validate", "Check a scenario file");
  validate->add_option("--config", config_path, "Scenario file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream cli_out;
    std::ostringstream cli_err;
    int code = app.exit(e, cli_out, cli_err);
    out << cli_out.str();
    err << cli_err.str();
    return code == 0 ? kExitOk : kExitConfigError;
  }

  std::optional<ScenarioConfig> config = Load(config_path, err);
  if (!config) return kExitConfigError;

  if (validate->parsed()) {
    out << "ok: " << config->num_uavs << " UAVs, " << config->max_rounds
        << " rounds\n";
    return kExitOk;
  }

  std::optional<UavRange> range;
  if (sweep->parsed()) {
    range = ParseRange(uavs);
    if (!range) {
      err << "error [UsageError]: --uavs expects <min>..<max> with 1 <= min "
             "<= max, got '"
          << uavs << "'\n";
      return kExitConfigError;
    }
  }
  if (seed) config->seed = *seed;

  try {
    fs::path dir = ResolveOutputDir(out_dir, *config);
    if (run->parsed()) return RunOne(*config, dir, out);
    return RunSweepCommand(*config, *range, rounds, dir, out);
  } catch (const Error& e) {
    ReportError(err, e);
    return kExitRuntimeError;
  } catch (const fs::filesystem_error& e) {
    err << "error [IoError]: " << e.what() << "\n";
    return kExitRuntimeError;
  }
}

}  // namespace uavsim::cli
