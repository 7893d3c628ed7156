#include "uavsim/sweep.h"

#include <algorithm>
#include <future>
#include <stdexcept>

namespace uavsim {

ScenarioConfig SweepScenario(const ScenarioConfig& base, int num_uavs,
                             int rounds) {
  ScenarioConfig c = base;
  c.num_uavs = num_uavs;
  c.initial_poses.clear();
  c.max_rounds = rounds;
  c.stop_on_convergence = false;
  return c;
}

SweepPoint Summarize(const ScenarioConfig& config, const RunLog& log) {
  const MetricsRecord& last = log.records.back();
  SweepPoint p;
  p.num_uavs = static_cast<int>(last.uavs.size());
  for (const UavMetrics& m : last.uavs) {
    p.mean_e_x += m.e_x;
    p.mean_e_y += m.e_y;
    p.mean_e_z += m.e_z;
  }
  const double n = std::max<double>(1.0, static_cast<double>(last.uavs.size()));
  p.mean_e_x /= n;
  p.mean_e_y /= n;
  p.mean_e_z /= n;
  p.total_view = last.total_view;
  p.effective_view = last.effective_view;
  p.optimal_view = std::min(p.num_uavs * config.intrinsics.fov_az, 360.0);
  p.converged_round = log.converged_round;
  return p;
}

std::vector<SweepRun> RunSweep(const ScenarioConfig& base, int min_uavs,
                               int max_uavs, int rounds, bool parallel) {
  if (min_uavs < 1 || max_uavs < min_uavs) {
    throw std::invalid_argument("sweep range must satisfy 1 <= min <= max");
  }
  auto run_one = [&](int m) {
    SweepRun r;
    r.config = SweepScenario(base, m, rounds);
    r.log = Run(r.config);
    r.point = Summarize(r.config, r.log);
    return r;
  };
  std::vector<SweepRun> runs;
  if (!parallel) {
    for (int m = min_uavs; m <= max_uavs; ++m) runs.push_back(run_one(m));
    return runs;
  }
  std::vector<std::future<SweepRun>> futures;
  for (int m = min_uavs; m <= max_uavs; ++m) {
    futures.push_back(std::async(std::launch::async, run_one, m));
  }
  for (auto& f : futures) runs.push_back(f.get());
  return runs;
}

}  // namespace uavsim
