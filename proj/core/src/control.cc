#include "uavsim/control.h"

#include <limits>

#include <Eigen/SVD>

#include "uavsim/errors.h"

namespace uavsim {

void ControlGains::Validate() const {
  if (!(lambda > 0.0)) throw ValidationError("gains: lambda must be > 0");
  if (!(k > 0.0)) throw ValidationError("gains: k must be > 0");
  if (!(d_u > 0.0)) throw ValidationError("gains: d_U must be > 0");
  if (!(d_q > 0.0)) throw ValidationError("gains: d_q must be > 0");
  if (!(damping >= 0.0)) throw ValidationError("gains: eps_damp must be >= 0");
}

InteractionMatrix FeatureJacobian(const FeatureState& s) {
  const double x1 = s.x1, x2 = s.x2, x3 = s.x3;
  InteractionMatrix l;
  l << -x3, 0.0, x1 * x3, x1 * x2, -(x1 * x1 + 1.0), x2,
       0.0, -x3, x2 * x3, x2 * x2 + 1.0, -x1 * x2, -x1,
       0.0, 0.0, x3 * x3, x2 * x3, -x1 * x3, 0.0;
  return l;
}

FeatureState DesiredState(const ControlGains& gains) {
  return {0.0, 0.0, 1.0 / gains.d_q};
}

Vec3 StateError(const FeatureState& s, const FeatureState& s_star) {
  return s.AsVector() - s_star.AsVector();
}

PseudoInverse DampedPseudoInverse(const InteractionMatrix& l, double damping) {
  // L^T (L L^T + eps I)^-1 = V diag(s / (s^2 + eps)) U^T. The SVD form keeps
  // the conditioning of L instead of squaring it through L L^T.
  Eigen::JacobiSVD<InteractionMatrix> svd(l, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Vec3 sigma = svd.singularValues();
  const double floor = 6.0 * std::numeric_limits<double>::epsilon() * sigma(0);
  if (!(sigma(2) * sigma(2) + damping > floor * floor) ||
      (damping == 0.0 && !(sigma(2) > floor))) {
    throw SingularInteraction("interaction matrix is rank deficient");
  }
  Eigen::Matrix<double, 6, 3> scaled = Eigen::Matrix<double, 6, 3>::Zero();
  for (int i = 0; i < 3; ++i) {
    scaled(i, i) = sigma(i) / (sigma(i) * sigma(i) + damping);
  }
  return svd.matrixV() * scaled * svd.matrixU().transpose();
}

Vec3 SwarmPairTerm(const Vec3& r_i, const Vec3& r_j, const ControlGains& gains,
                   SwarmSign sign) {
  const Vec3 d = r_j - r_i;
  const double dist2 = d.squaredNorm();
  if (!(dist2 > kCoincidentDistance * kCoincidentDistance)) {
    throw CoincidentAgents("two agents occupy the same position");
  }
  const Vec3 literal = gains.k * (d / dist2 - d / (gains.d_u * gains.d_u));
  return sign == SwarmSign::kLiteral ? literal : Vec3(-literal);
}

Vec3 SwarmInput(const Vec3& r_i, std::span<const Vec3> neighbors,
                const ControlGains& gains, SwarmSign sign) {
  Vec3 sum = Vec3::Zero();
  for (const Vec3& r_j : neighbors) sum += SwarmPairTerm(r_i, r_j, gains, sign);
  return sum;
}

Twist ControlCommand(const Vec3& error, const InteractionMatrix& l,
                     const Twist& target_twist, const Vec3& swarm_velocity,
                     const ControlGains& gains) {
  const Vector6d feedback =
      -gains.lambda * (DampedPseudoInverse(l, gains.damping) * error);
  Twist cmd = Twist::FromVector(feedback + target_twist.AsVector());
  cmd.linear += swarm_velocity;
  return cmd;
}

}  // namespace uavsim
