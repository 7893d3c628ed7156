#ifndef UAVSIM_SCENARIO_H_
#define UAVSIM_SCENARIO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uavsim/camera.h"
#include "uavsim/control.h"
#include "uavsim/dynamics.h"
#include "uavsim/estimation.h"
#include "uavsim/geometry.h"

namespace uavsim {

// Where the per-round feature state comes from: re-measured from geometry, or
// propagated open-loop through the state derivative.
enum class FeatureSource { kMeasured, kIntegrated };

struct ConvergenceCriteria {
  int window = 10;     // rounds
  double tol_e = 1e-2; // max error area
  double tol_v = 0.05; // max |speed - target speed| / max(target speed, 1)
};

struct ScenarioConfig {
  int num_uavs = 0;
  double dt = 0.1;
  int max_rounds = 200;
  ControlGains gains;
  CameraIntrinsics intrinsics;
  double gamma = 400.0;  // communication range, m
  MobilityPattern mobility = TrigAccelerating{};
  EstimatorKind estimator = OracleEstimator{};
  SwarmSign swarm_sign = SwarmSign::kCorrected;
  bool swarm_enabled = true;
  FeatureSource feature_source = FeatureSource::kMeasured;
  // Empty means "auto-ring": evenly spaced at radius d_q, facing the target.
  std::vector<Pose> initial_poses;
  double initial_height = 50.0;
  Vec3 target_position = Vec3::Zero();
  double pixel_noise_sigma = 0.0;      // pixels
  std::optional<double> speed_limit;   // per-axis clamp on linear command, m/s
  ConvergenceCriteria convergence;
  bool stop_on_convergence = false;
  std::uint64_t seed = 0;
  std::string output_dir;

  bool auto_ring() const { return initial_poses.empty(); }

  // Throws ValidationError naming the violated invariant.
  void Validate() const;
};

// UAVs evenly spaced on a horizontal circle of radius `radius` around
// `target` at altitude `height`, each yawed to face the target.
std::vector<Pose> AutoRingPoses(int count, const Vec3& target, double radius,
                                double height);

// Explicit poses, or the auto-ring at radius d_q.
std::vector<Pose> InitialPoses(const ScenarioConfig& config);

// Parses the JSON scenario schema (see README). Unknown keys are rejected and
// absent optional keys take the defaults above. An empty document is an empty
// object. Throws ParseError or ValidationError.
ScenarioConfig ParseConfig(std::string_view text);

// Reads and parses a scenario file. Throws IoError if it cannot be read.
ScenarioConfig LoadConfig(const std::filesystem::path& path);

// Canonical JSON text: every field written explicitly, stable key order.
std::string CanonicalConfigText(const ScenarioConfig& config);

}  // namespace uavsim

#endif  // UAVSIM_SCENARIO_H_
