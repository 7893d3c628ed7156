#ifndef UAVSIM_ENGINE_H_
#define UAVSIM_ENGINE_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "uavsim/dynamics.h"
#include "uavsim/estimation.h"
#include "uavsim/geometry.h"
#include "uavsim/metrics.h"
#include "uavsim/scenario.h"

namespace uavsim {

struct UavAgent {
  int id = 0;
  Pose pose;
  Twist twist;    // inertial-frame velocity applied during the last round
  Twist command;  // the same command expressed in the optical frame (V_c)
  SystemState system_state;
  Vector9d state_rate = Vector9d::Zero();  // rates of system_state under command
  std::optional<Belief> belief;            // UKF only
};

struct World {
  std::vector<UavAgent> agents;  // sorted by id
  TargetState target;
  double time = 0.0;  // round * dt
  int round = 0;
  std::uint64_t rng_seed = 0;
};

// Agent id -> ids of agents within range, ascending.
using NeighborTable = std::map<int, std::vector<int>>;

// j is a neighbor of i iff 0 < |r_j - r_i| <= gamma.
NeighborTable FindNeighbors(std::span<const UavAgent> agents, double gamma);

struct OcclusionEvent {
  int round = 0;  // round being computed when the target was not visible
  int agent_id = 0;
};

struct StepResult {
  World world;
  MetricsRecord record;
  std::vector<OcclusionEvent> occlusions;
};

World InitialWorld(const ScenarioConfig& config);

// Ground-truth metrics of a world state.
MetricsRecord MeasureWorld(const World& world, const ScenarioConfig& config);

// One synchronous round. Every agent reads only `world`, so the result does
// not depend on `order` (the sequence agents are processed in; empty means
// storage order). SimulationError from an agent update is rethrown with the
// agent id attached.
StepResult Step(const World& world, const ScenarioConfig& config,
                std::span<const std::size_t> order = {});

// True when the last `criteria.window` records all have max error area below
// tol_e and relative speed mismatch below tol_v.
bool CheckConvergence(std::span<const MetricsRecord> history,
                      const ConvergenceCriteria& criteria);

struct AgentSnapshot {
  int id = 0;
  Pose pose;
  Twist twist;
  PixelPoint pixel;
  bool visible = false;
};

struct RunLog {
  std::vector<MetricsRecord> records;  // completed rounds + 1
  std::vector<std::vector<AgentSnapshot>> snapshots;  // per record
  std::vector<TargetState> targets;                   // per record
  World final_world;
  std::vector<OcclusionEvent> occlusions;
  std::optional<int> converged_round;
};

struct RunOptions {
  std::vector<std::size_t> iteration_order;  // forwarded to Step
};

// Steps until max_rounds, or until CheckConvergence holds when
// stop_on_convergence is set.
RunLog Run(const ScenarioConfig& config, const RunOptions& options = {});

}  // namespace uavsim

#endif  // UAVSIM_ENGINE_H_
