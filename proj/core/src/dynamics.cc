#include "uavsim/dynamics.h"

#include <cmath>
#include <stdexcept>
#include <string>

#include "uavsim/errors.h"

namespace uavsim {

Vector9d SystemState::AsVector() const {
  Vector9d v;
  v << feature.x1, feature.x2, feature.x3, target_position, target_velocity;
  return v;
}

SystemState SystemState::FromVector(const Vector9d& v) {
  SystemState s;
  s.feature = {v(0), v(1), v(2)};
  s.target_position = v.segment<3>(3);
  s.target_velocity = v.segment<3>(6);
  return s;
}

Vector9d StateDerivative(const SystemState& state, const Twist& cmd,
                         const Rotation3& world_to_camera) {
  const double x1 = state.feature.x1;
  const double x2 = state.feature.x2;
  const double x3 = state.feature.x3;
  const Vec3 vq = world_to_camera * state.target_velocity;
  const Vec3& vc = cmd.linear;
  const Vec3& wc = cmd.angular;

  const double zeta1 = wc.z() * x2 - wc.y() - wc.y() * x1 * x1 + wc.x() * x1 * x2;
  const double zeta2 = -wc.z() * x1 + wc.x() + wc.x() * x2 * x2 - wc.y() * x1 * x2;
  const double eta1 = (vc.z() * x1 - vc.x()) * x3;
  const double eta2 = (vc.z() * x2 - vc.y()) * x3;

  Vector9d rates;
  rates(0) = vq.x() * x3 - vq.z() * x1 * x3 + zeta1 + eta1;
  rates(1) = vq.y() * x3 - vq.z() * x2 * x3 + zeta2 + eta2;
  rates(2) = -vq.z() * x3 * x3 + vc.z() * x3 * x3 -
             (wc.y() * x1 - wc.x() * x2) * x3;
  rates.segment<3>(3) = state.target_velocity;
  rates.segment<3>(6).setZero();

  if (!rates.allFinite()) {
    throw NonFiniteState("state derivative is not finite");
  }
  return rates;
}

SystemState Integrate(const SystemState& state, const Vector9d& rates,
                      double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("Integrate: dt must be > 0");
  SystemState next = SystemState::FromVector(state.AsVector() + dt * rates);
  if (!(next.feature.x3 > 0.0)) {
    throw DepthCollapse("inverse depth became " +
                        std::to_string(next.feature.x3) +
                        "; target crossed the camera plane");
  }
  return next;
}

namespace {

struct VelocityAt {
  double t;

  Vec3 operator()(const TrigAccelerating&) const {
    return {std::abs(t * std::sin(t)), std::abs(t * std::cos(t)), 0.0};
  }
  Vec3 operator()(const ConstantVelocity& c) const { return c.velocity; }
  Vec3 operator()(const Waypoints& w) const {
    const auto& pts = w.points;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      const double t0 = pts[i].time, t1 = pts[i + 1].time;
      if (t >= t0 && t < t1) {
        return (pts[i + 1].position - pts[i].position) / (t1 - t0);
      }
    }
    return Vec3::Zero();
  }
  Vec3 operator()(const Stationary&) const { return Vec3::Zero(); }
};

}  // namespace

Vec3 TargetVelocity(double t, const MobilityPattern& pattern) {
  return std::visit(VelocityAt{t}, pattern);
}

TargetState AdvanceTarget(const TargetState& target, double t, double dt,
                          const MobilityPattern& pattern) {
  if (!(dt > 0.0)) throw std::invalid_argument("AdvanceTarget: dt must be > 0");
  TargetState next;
  next.position = target.position + dt * TargetVelocity(t, pattern);
  next.velocity = TargetVelocity(t + dt, pattern);
  return next;
}

}  // namespace uavsim
