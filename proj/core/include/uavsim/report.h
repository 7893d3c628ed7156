#ifndef UAVSIM_REPORT_H_
#define UAVSIM_REPORT_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "uavsim/engine.h"
#include "uavsim/sweep.h"

namespace uavsim {

// Text table shared by the CSV writer and the plotter, so every plotted value
// is the same string that lands in the CSV.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Cells of the named column; throws std::out_of_range for unknown names.
  std::vector<std::string> Column(std::string_view name) const;
};

// printf "%.9g"; NaN prints as "nan".
std::string FormatNumber(double value);

// metrics.csv: round, time, e_x_<id>, e_y_<id>, e_z_<id>, e_a_<id>,
// speed_<id> for each UAV, target_speed, total_view, effective_view.
CsvTable MetricsTable(const RunLog& log);

// trajectories.csv: round, uav, x, y, z, yaw, u, v (one row per UAV per round).
CsvTable TrajectoryTable(const RunLog& log);

// target.csv: round, time, x, y, z, vx, vy, vz.
CsvTable TargetTable(const RunLog& log);

// sweep.csv: num_uavs, mean_e_x, mean_e_y, mean_e_z, total_view,
// effective_view, optimal_view, converged_round.
CsvTable SweepTable(const std::vector<SweepRun>& runs);

std::string ToCsvText(const CsvTable& table);
CsvTable ParseCsvText(std::string_view text);

// Writes metrics.csv, trajectories.csv and target.csv. Throws IoError.
std::vector<std::filesystem::path> EmitCsv(const RunLog& log,
                                           const std::filesystem::path& dir);

// trajectory_top_view.svg, error_area.svg, speed.svg. Throws IoError.
std::vector<std::filesystem::path> EmitPlots(const RunLog& log,
                                             const std::filesystem::path& dir);

// sweep.csv. Throws IoError.
std::filesystem::path EmitSweepCsv(const std::vector<SweepRun>& runs,
                                   const std::filesystem::path& dir);

// errors_vs_uavs.svg, coverage_vs_uavs.svg. Throws IoError.
std::vector<std::filesystem::path> EmitSweepPlots(
    const std::vector<SweepRun>& runs, const std::filesystem::path& dir);

}  // namespace uavsim

#endif  // UAVSIM_REPORT_H_
