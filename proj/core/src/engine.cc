#include "uavsim/engine.h"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>

#include "uavsim/camera.h"
#include "uavsim/control.h"
#include "uavsim/errors.h"

namespace uavsim {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct AgentUpdate {
  UavAgent agent;
  bool occluded = false;
};

std::optional<FeatureState> MeasureFeatures(const Vec3& p_cam,
                                            const ScenarioConfig& config,
                                            std::uint64_t seed, int round,
                                            int agent_id) {
  if (!(p_cam.z() > kDepthEpsilon)) return std::nullopt;
  PixelPoint px = Project(p_cam, config.intrinsics);
  if (config.pixel_noise_sigma > 0.0) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed),
                      static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(round),
                      static_cast<std::uint32_t>(agent_id)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> noise(0.0, config.pixel_noise_sigma);
    px.u += noise(rng);
    px.v += noise(rng);
  }
  const NormalizedPoint n = PixelToFeature(px, config.intrinsics);
  return FeatureState{n.x1, n.x2, 1.0 / p_cam.z()};
}

AgentUpdate UpdateAgent(const World& world, std::size_t index,
                        const NeighborTable& neighbors,
                        const std::map<int, std::size_t>& index_of,
                        const ScenarioConfig& config) {
  const UavAgent& self = world.agents[index];
  const double dt = config.dt;
  const Rotation3 r_cam = CameraRotation(self.pose);

  // Measure the target and recover its inertial position from the feature.
  const Vec3 p_cam = r_cam * (world.target.position - self.pose.position);
  const std::optional<FeatureState> measured =
      MeasureFeatures(p_cam, config, world.rng_seed, world.round, self.id);
  std::optional<Vec3> measured_position;
  if (measured) {
    const Vec3 ray(measured->x1, measured->x2, 1.0);
    measured_position =
        self.pose.position + r_cam.Transposed() * (ray / measured->x3);
  }

  const TargetEstimate estimate =
      EstimateTarget(config.estimator, world.target, measured_position, dt,
                     self.belief);

  SystemState state;
  if (config.feature_source == FeatureSource::kIntegrated && world.round > 0) {
    state = Integrate(self.system_state, self.state_rate, dt);
  } else if (measured) {
    state.feature = *measured;
  } else {
    state.feature = self.system_state.feature;  // one-step hold
  }
  state.target_position = estimate.position;
  state.target_velocity = estimate.velocity;

  std::vector<Vec3> neighbor_positions;
  if (config.swarm_enabled) {
    for (int id : neighbors.at(self.id)) {
      neighbor_positions.push_back(world.agents[index_of.at(id)].pose.position);
    }
  }
  const Vec3 swarm = SwarmInput(self.pose.position, neighbor_positions,
                                config.gains, config.swarm_sign);

  const FeatureState desired = DesiredState(config.gains);
  const Vec3 error = StateError(state.feature, desired);
  const InteractionMatrix l = FeatureJacobian(state.feature);
  const Twist target_twist{r_cam * estimate.velocity, Vec3::Zero()};
  Twist command =
      ControlCommand(error, l, target_twist, r_cam * swarm, config.gains);

  Vec3 v_world = r_cam.Transposed() * command.linear;
  if (config.speed_limit) {
    const double lim = *config.speed_limit;
    v_world = v_world.cwiseMax(-lim).cwiseMin(lim);
    command.linear = r_cam * v_world;
  }
  if (!command.IsFinite()) {
    throw NonFiniteState("control command is not finite");
  }

  UavAgent next = self;
  next.pose.position = self.pose.position + dt * v_world;
  // The optical frame turns with the commanded rate: R <- exp(-dt [w]x) R.
  const double rate = command.angular.norm();
  Mat3 r_next = r_cam.matrix();
  if (rate > 0.0) {
    r_next = Eigen::AngleAxisd(-dt * rate, command.angular / rate)
                 .toRotationMatrix() *
             r_next;
  }
  next.pose.orientation = EulerAnglesFromRotation(
      BodyToOptical().Transposed() * Rotation3(r_next));
  next.twist = {v_world, r_cam.Transposed() * command.angular};
  next.command = command;
  next.system_state = state;
  next.state_rate = StateDerivative(state, command, r_cam);
  next.belief = estimate.belief;
  return {std::move(next), !measured.has_value()};
}

}  // namespace

NeighborTable FindNeighbors(std::span<const UavAgent> agents, double gamma) {
  if (!(gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  NeighborTable table;
  for (const UavAgent& a : agents) table[a.id];
  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = i + 1; j < agents.size(); ++j) {
      const double d = (agents[j].pose.position - agents[i].pose.position).norm();
      if (d > 0.0 && d <= gamma) {
        table[agents[i].id].push_back(agents[j].id);
        table[agents[j].id].push_back(agents[i].id);
      }
    }
  }
  for (auto& [id, ids] : table) std::sort(ids.begin(), ids.end());
  return table;
}

World InitialWorld(const ScenarioConfig& config) {
  config.Validate();
  World world;
  world.rng_seed = config.seed;
  world.target.position = config.target_position;
  world.target.velocity = TargetVelocity(0.0, config.mobility);
  const std::vector<Pose> poses = InitialPoses(config);
  for (int i = 0; i < config.num_uavs; ++i) {
    UavAgent a;
    a.id = i;
    a.pose = poses[i];
    a.pose.orientation = WrapAngles(a.pose.orientation);
    const Vec3 p_cam = WorldToOptical(a.pose, world.target.position);
    // Placeholder features when the target starts behind the camera; they
    // are only used if the first measurement is also missing.
    a.system_state.feature = p_cam.z() > kDepthEpsilon
                                 ? ComputeFeatureState(p_cam)
                                 : DesiredState(config.gains);
    a.system_state.target_position = world.target.position;
    a.system_state.target_velocity = world.target.velocity;
    world.agents.push_back(std::move(a));
  }
  return world;
}

MetricsRecord MeasureWorld(const World& world, const ScenarioConfig& config) {
  MetricsRecord rec;
  rec.round = world.round;
  rec.time = world.time;
  rec.target_speed = world.target.velocity.norm();
  std::vector<Vec3> positions;
  for (const UavAgent& a : world.agents) {
    UavMetrics m;
    m.id = a.id;
    const Vec3 p_rel = RelativePosition(world.target.position, a.pose.position);
    const Vec3 p_cam = WorldToOptical(a.pose, world.target.position);
    m.e_z = p_rel.norm() / config.gains.d_q;
    if (p_cam.z() > kDepthEpsilon) {
      m.visible = true;
      m.pixel = Project(p_cam, config.intrinsics);
      const NormalizedErrors e = ComputeNormalizedErrors(
          m.pixel, p_rel, config.intrinsics, config.gains.d_q);
      m.e_x = e.e_x;
      m.e_y = e.e_y;
      m.e_a = ErrorArea(e.e_x, e.e_y);
    } else {
      m.pixel = {kNaN, kNaN, false};
      m.e_x = m.e_y = m.e_a = kNaN;
    }
    m.speed = a.twist.linear.norm();
    rec.uavs.push_back(m);
    positions.push_back(a.pose.position);
  }
  rec.total_view = static_cast<double>(positions.size()) * config.intrinsics.fov_az;
  try {
    rec.effective_view = ComputeViewCoverage(positions, world.target.position,
                                             config.intrinsics.fov_az)
                             .effective;
  } catch (const DegenerateAzimuth&) {
    rec.effective_view = kNaN;
  }
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      rec.inter_uav_distances.push_back((positions[j] - positions[i]).norm());
    }
  }
  return rec;
}

StepResult Step(const World& world, const ScenarioConfig& config,
                std::span<const std::size_t> order) {
  const std::size_t n = world.agents.size();
  std::vector<std::size_t> sequence(order.begin(), order.end());
  if (sequence.empty()) {
    sequence.resize(n);
    std::iota(sequence.begin(), sequence.end(), 0);
  }
  if (sequence.size() != n) {
    throw std::invalid_argument("iteration order must list every agent once");
  }

  const NeighborTable neighbors = FindNeighbors(world.agents, config.gamma);
  std::map<int, std::size_t> index_of;
  for (std::size_t i = 0; i < n; ++i) index_of[world.agents[i].id] = i;

  // Failures are collected per agent so the error reported (lowest id) does
  // not depend on the processing order either.
  std::vector<std::optional<AgentUpdate>> updates(n);
  std::vector<std::exception_ptr> failures(n);
  for (std::size_t idx : sequence) {
    try {
      updates.at(idx) = UpdateAgent(world, idx, neighbors, index_of, config);
    } catch (SimulationError& e) {
      e.set_agent_id(world.agents[idx].id);
      failures.at(idx) = std::current_exception();
    }
  }
  for (const std::exception_ptr& failure : failures) {
    if (failure) std::rethrow_exception(failure);
  }

  StepResult result;
  World& next = result.world;
  next.rng_seed = world.rng_seed;
  next.round = world.round + 1;
  next.time = next.round * config.dt;
  next.target = AdvanceTarget(world.target, world.time, config.dt,
                              config.mobility);
  for (std::size_t i = 0; i < n; ++i) {
    if (!updates[i]) throw std::invalid_argument("iteration order skipped an agent");
    if (updates[i]->occluded) {
      result.occlusions.push_back({world.round, updates[i]->agent.id});
    }
    next.agents.push_back(std::move(updates[i]->agent));
  }
  std::sort(next.agents.begin(), next.agents.end(),
            [](const UavAgent& a, const UavAgent& b) { return a.id < b.id; });
  std::sort(result.occlusions.begin(), result.occlusions.end(),
            [](const OcclusionEvent& a, const OcclusionEvent& b) {
              return a.agent_id < b.agent_id;
            });
  result.record = MeasureWorld(next, config);
  return result;
}

bool CheckConvergence(std::span<const MetricsRecord> history,
                      const ConvergenceCriteria& criteria) {
  if (history.empty() || criteria.window <= 0 ||
      history.size() < static_cast<std::size_t>(criteria.window)) {
    return false;
  }
  for (const MetricsRecord& rec : history.last(criteria.window)) {
    const double scale = std::max(rec.target_speed, 1.0);
    for (const UavMetrics& m : rec.uavs) {
      if (!(m.e_a < criteria.tol_e)) return false;
      if (!(std::abs(m.speed - rec.target_speed) / scale < criteria.tol_v)) {
        return false;
      }
    }
  }
  return true;
}

namespace {

std::vector<AgentSnapshot> Snapshot(const World& world,
                                    const MetricsRecord& record) {
  std::vector<AgentSnapshot> out;
  for (std::size_t i = 0; i < world.agents.size(); ++i) {
    const UavAgent& a = world.agents[i];
    out.push_back({a.id, a.pose, a.twist, record.uavs[i].pixel,
                   record.uavs[i].visible});
  }
  return out;
}

}  // namespace

RunLog Run(const ScenarioConfig& config, const RunOptions& options) {
  RunLog log;
  World world = InitialWorld(config);
  log.records.push_back(MeasureWorld(world, config));
  log.snapshots.push_back(Snapshot(world, log.records.back()));
  log.targets.push_back(world.target);
  for (int r = 0; r < config.max_rounds; ++r) {
    StepResult step = Step(world, config, options.iteration_order);
    world = std::move(step.world);
    log.occlusions.insert(log.occlusions.end(), step.occlusions.begin(),
                          step.occlusions.end());
    log.records.push_back(std::move(step.record));
    log.snapshots.push_back(Snapshot(world, log.records.back()));
    log.targets.push_back(world.target);
    if (!log.converged_round &&
        CheckConvergence(log.records, config.convergence)) {
      log.converged_round = world.round;
      if (config.stop_on_convergence) break;
    }
  }
  log.final_world = std::move(world);
  return log;
}

}  // namespace uavsim
