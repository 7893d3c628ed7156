#include "uavsim/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

#include "uavsim/errors.h"
#include "uavsim/svg_plot.h"

namespace uavsim {
namespace fs = std::filesystem;

namespace {

std::string Int(long long v) { return std::to_string(v); }

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path.string() + "'");
}

void EnsureDirectory(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create directory '" + dir.string() + "': " + ec.message());
}

std::vector<int> UavIds(const RunLog& log) {
  std::vector<int> ids;
  for (const UavMetrics& m : log.records.front().uavs) ids.push_back(m.id);
  return ids;
}

}  // namespace

std::vector<std::string> CsvTable::Column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw std::out_of_range("no column '" + std::string(name) + "'");
  const auto col = static_cast<std::size_t>(it - header.begin());
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (const auto& row : rows) out.push_back(row.at(col));
  return out;
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", value);
  return buf;
}

CsvTable MetricsTable(const RunLog& log) {
  CsvTable t;
  t.header = {"round", "time"};
  for (int id : UavIds(log)) {
    for (const char* f : {"e_x_", "e_y_", "e_z_", "e_a_", "speed_"}) {
      t.header.push_back(f + std::to_string(id));
    }
  }
  t.header.insert(t.header.end(), {"target_speed", "total_view", "effective_view"});
  for (const MetricsRecord& r : log.records) {
    std::vector<std::string> row = {Int(r.round), FormatNumber(r.time)};
    for (const UavMetrics& m : r.uavs) {
      for (double v : {m.e_x, m.e_y, m.e_z, m.e_a, m.speed}) row.push_back(FormatNumber(v));
    }
    row.push_back(FormatNumber(r.target_speed));
    row.push_back(FormatNumber(r.total_view));
    row.push_back(FormatNumber(r.effective_view));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable TrajectoryTable(const RunLog& log) {
  CsvTable t;
  t.header = {"round", "uav", "x", "y", "z", "yaw", "u", "v"};
  for (std::size_t k = 0; k < log.snapshots.size(); ++k) {
    for (const AgentSnapshot& s : log.snapshots[k]) {
      t.rows.push_back({Int(log.records[k].round), Int(s.id),
                        FormatNumber(s.pose.position.x()),
                        FormatNumber(s.pose.position.y()),
                        FormatNumber(s.pose.position.z()),
                        FormatNumber(s.pose.orientation.z),
                        FormatNumber(s.pixel.u), FormatNumber(s.pixel.v)});
    }
  }
  return t;
}

CsvTable TargetTable(const RunLog& log) {
  CsvTable t;
  t.header = {"round", "time", "x", "y", "z", "vx", "vy", "vz"};
  for (std::size_t k = 0; k < log.records.size(); ++k) {
    const auto& tgt = log.targets.at(k);
    t.rows.push_back({Int(log.records[k].round), FormatNumber(log.records[k].time),
                      FormatNumber(tgt.position.x()), FormatNumber(tgt.position.y()),
                      FormatNumber(tgt.position.z()), FormatNumber(tgt.velocity.x()),
                      FormatNumber(tgt.velocity.y()), FormatNumber(tgt.velocity.z())});
  }
  return t;
}

CsvTable SweepTable(const std::vector<SweepRun>& runs) {
  CsvTable t;
  t.header = {"num_uavs", "mean_e_x", "mean_e_y", "mean_e_z", "total_view",
              "effective_view", "optimal_view", "converged_round"};
  for (const SweepRun& r : runs) {
    const SweepPoint& p = r.point;
    t.rows.push_back({Int(p.num_uavs), FormatNumber(p.mean_e_x),
                      FormatNumber(p.mean_e_y), FormatNumber(p.mean_e_z),
                      FormatNumber(p.total_view), FormatNumber(p.effective_view),
                      FormatNumber(p.optimal_view),
                      p.converged_round ? Int(*p.converged_round) : "none"});
  }
  return t;
}

std::string ToCsvText(const CsvTable& table) {
  std::string out;
  auto line = [&out](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(table.header);
  for (const auto& row : table.rows) line(row);
  return out;
}

CsvTable ParseCsvText(std::string_view text) {
  CsvTable t;
  bool first = true;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      cells.emplace_back(line.substr(start, comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

std::vector<fs::path> EmitCsv(const RunLog& log, const fs::path& dir) {
  EnsureDirectory(dir);
  const std::vector<std::pair<fs::path, CsvTable>> files = {
      {dir / "metrics.csv", MetricsTable(log)},
      {dir / "trajectories.csv", TrajectoryTable(log)},
      {dir / "target.csv", TargetTable(log)}};
  std::vector<fs::path> paths;
  for (const auto& [path, table] : files) {
    WriteText(path, ToCsvText(table));
    paths.push_back(path);
  }
  return paths;
}

std::vector<fs::path> EmitPlots(const RunLog& log, const fs::path& dir) {
  EnsureDirectory(dir);
  const CsvTable metrics = MetricsTable(log);
  const CsvTable traj = TrajectoryTable(log);
  const CsvTable target = TargetTable(log);
  const std::vector<int> ids = UavIds(log);

  PlotSpec top{"Top view (inertial frame)", "x [m]", "y [m]", false, true, {}};
  for (int id : ids) {
    PlotSeries s{"UAV " + std::to_string(id), {}, {}, false};
    for (const auto& row : traj.rows) {
      if (row[1] == std::to_string(id)) {
        s.x.push_back(row[2]);
        s.y.push_back(row[3]);
      }
    }
    top.series.push_back(std::move(s));
  }
  top.series.push_back({"target", target.Column("x"), target.Column("y"), false});

  const std::vector<std::string> rounds = metrics.Column("round");
  PlotSpec area{"Error area per UAV", "round", "e_a (log scale)", true, false, {}};
  PlotSpec speed{"UAV and target speed", "round", "speed [m/s]", false, false, {}};
  for (int id : ids) {
    const std::string sid = std::to_string(id);
    area.series.push_back({"UAV " + sid, rounds, metrics.Column("e_a_" + sid), false});
    speed.series.push_back({"UAV " + sid, rounds, metrics.Column("speed_" + sid), false});
  }
  speed.series.push_back({"target", rounds, metrics.Column("target_speed"), false});

  const std::vector<std::pair<fs::path, const PlotSpec*>> files = {
      {dir / "trajectory_top_view.svg", &top},
      {dir / "error_area.svg", &area},
      {dir / "speed.svg", &speed}};
  std::vector<fs::path> paths;
  for (const auto& [path, spec] : files) {
    WriteSvg(path, *spec);
    paths.push_back(path);
  }
  return paths;
}

fs::path EmitSweepCsv(const std::vector<SweepRun>& runs, const fs::path& dir) {
  EnsureDirectory(dir);
  const fs::path path = dir / "sweep.csv";
  WriteText(path, ToCsvText(SweepTable(runs)));
  return path;
}

std::vector<fs::path> EmitSweepPlots(const std::vector<SweepRun>& runs,
                                     const fs::path& dir) {
  EnsureDirectory(dir);
  const CsvTable t = SweepTable(runs);
  const std::vector<std::string> m = t.Column("num_uavs");
  PlotSpec errors{"Normalized error vs number of UAVs", "number of UAVs",
                  "mean normalized error (final round)", false, false, {}};
  errors.series = {{"e_x", m, t.Column("mean_e_x"), true},
                   {"e_y", m, t.Column("mean_e_y"), true},
                   {"e_z", m, t.Column("mean_e_z"), true}};
  PlotSpec coverage{"View angles vs number of UAVs (potential coverage)",
                    "number of UAVs", "view angle [deg]", false, false, {}};
  coverage.series = {{"total", m, t.Column("total_view"), true},
                     {"effective", m, t.Column("effective_view"), true},
                     {"optimal", m, t.Column("optimal_view"), true}};
  const fs::path e = dir / "errors_vs_uavs.svg";
  const fs::path c = dir / "coverage_vs_uavs.svg";
  WriteSvg(e, errors);
  WriteSvg(c, coverage);
  return {e, c};
}

}  // namespace uavsim
