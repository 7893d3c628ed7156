#ifndef UAVSIM_DYNAMICS_H_
#define UAVSIM_DYNAMICS_H_

#include <variant>
#include <vector>

#include "uavsim/camera.h"
#include "uavsim/geometry.h"

namespace uavsim {

using Vector9d = Eigen::Matrix<double, 9, 1>;

// Per-UAV state X = [x1, x2, x3, x_q, y_q, z_q, v_qx, v_qy, v_qz].
struct SystemState {
  FeatureState feature;
  Vec3 target_position = Vec3::Zero();
  Vec3 target_velocity = Vec3::Zero();

  Vector9d AsVector() const;
  static SystemState FromVector(const Vector9d& v);
};

// Ground target. Angular velocity is identically zero and not stored.
struct TargetState {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
};

// v_q(t) = [|t sin t|, |t cos t|, 0].
struct TrigAccelerating {};

struct ConstantVelocity {
  Vec3 velocity = Vec3::Zero();
};

struct Waypoint {
  double time = 0.0;
  Vec3 position = Vec3::Zero();
};

// Piecewise-linear path through time-ordered waypoints; at rest before the
// first and after the last.
struct Waypoints {
  std::vector<Waypoint> points;
};

struct Stationary {};

using MobilityPattern =
    std::variant<TrigAccelerating, ConstantVelocity, Waypoints, Stationary>;

// Continuous-time rates of X under camera twist `cmd` (optical frame).
//
// The feature rows need the target velocity in the same frame as `cmd`; it is
// taken as world_to_camera * state.target_velocity. The target rows use the
// inertial velocity and the velocity rows are zero (constant-velocity model).
// With the identity default every vector is used as given.
//
// Throws NonFiniteState if any rate is not finite.
Vector9d StateDerivative(const SystemState& state, const Twist& cmd,
                         const Rotation3& world_to_camera = Rotation3());

// Explicit Euler step. Throws DepthCollapse if x3 ends up <= 0.
SystemState Integrate(const SystemState& state, const Vector9d& rates,
                      double dt);

Vec3 TargetVelocity(double t, const MobilityPattern& pattern);

// p <- p + dt * v(t); v <- v(t + dt).
TargetState AdvanceTarget(const TargetState& target, double t, double dt,
                          const MobilityPattern& pattern);

}  // namespace uavsim

#endif  // UAVSIM_DYNAMICS_H_
