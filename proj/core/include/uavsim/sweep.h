#ifndef UAVSIM_SWEEP_H_
#define UAVSIM_SWEEP_H_

#include <optional>
#include <vector>

#include "uavsim/engine.h"
#include "uavsim/scenario.h"

namespace uavsim {

// Final-round averages over the UAVs of one swept formation size.
struct SweepPoint {
  int num_uavs = 0;
  double mean_e_x = 0.0;
  double mean_e_y = 0.0;
  double mean_e_z = 0.0;
  double total_view = 0.0;      // degrees
  double effective_view = 0.0;  // degrees
  double optimal_view = 0.0;    // min(M * fov, 360)
  std::optional<int> converged_round;
};

struct SweepRun {
  ScenarioConfig config;
  RunLog log;
  SweepPoint point;
};

// The base scenario with `num_uavs` UAVs in auto-ring placement, run for
// `rounds` rounds.
ScenarioConfig SweepScenario(const ScenarioConfig& base, int num_uavs,
                             int rounds);

SweepPoint Summarize(const ScenarioConfig& config, const RunLog& log);

// Runs M = min..max. Scenarios share nothing; with `parallel` they are run on
// separate threads and collected in M order.
std::vector<SweepRun> RunSweep(const ScenarioConfig& base, int min_uavs,
                               int max_uavs, int rounds, bool parallel = true);

}  // namespace uavsim

#endif  // UAVSIM_SWEEP_H_
