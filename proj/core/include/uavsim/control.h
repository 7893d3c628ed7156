#ifndef UAVSIM_CONTROL_H_
#define UAVSIM_CONTROL_H_

#include <span>

#include "uavsim/camera.h"
#include "uavsim/geometry.h"

namespace uavsim {

// Feature Jacobian L_s; it is also the interaction matrix L_e of the error.
using InteractionMatrix = Eigen::Matrix<double, 3, 6>;
using PseudoInverse = Eigen::Matrix<double, 6, 3>;

// Below this separation (meters) two agents are considered coincident.
inline constexpr double kCoincidentDistance = 1e-9;

struct ControlGains {
  double lambda = 1.0;   // 1/s
  double k = 10.0;       // m^2/s
  double d_u = 200.0;    // desired inter-UAV distance, m
  double d_q = 100.0;    // desired camera-target distance, m
  double damping = 1e-12;

  void Validate() const;
};

// kCorrected repels below d_U and attracts above it. kLiteral evaluates
// k * ((r_j - r_i)/|r_j - r_i|^2 - (r_j - r_i)/d_U^2) exactly as written,
// which attracts at short range.
enum class SwarmSign { kCorrected, kLiteral };

InteractionMatrix FeatureJacobian(const FeatureState& s);

// [0, 0, 1/d_q]: target on the principal point at distance d_q.
FeatureState DesiredState(const ControlGains& gains);

Vec3 StateError(const FeatureState& s, const FeatureState& s_star);

// L^T (L L^T + damping*I)^-1. With damping = 0 and full row rank this is the
// Moore-Penrose pseudo-inverse. Throws SingularInteraction when the 3x3 Gram
// matrix cannot be inverted.
PseudoInverse DampedPseudoInverse(const InteractionMatrix& l, double damping);

// Contribution of neighbor j to agent i's swarm velocity. Throws
// CoincidentAgents when |r_j - r_i| <= kCoincidentDistance.
Vec3 SwarmPairTerm(const Vec3& r_i, const Vec3& r_j, const ControlGains& gains,
                   SwarmSign sign = SwarmSign::kCorrected);

// Sum of SwarmPairTerm over `neighbors`, accumulated in the given order.
Vec3 SwarmInput(const Vec3& r_i, std::span<const Vec3> neighbors,
                const ControlGains& gains,
                SwarmSign sign = SwarmSign::kCorrected);

// V_c = -lambda * L^+ e + V_q + [u_s; 0]. All vectors must share one frame;
// the engine passes optical-frame quantities.
Twist ControlCommand(const Vec3& error, const InteractionMatrix& l,
                     const Twist& target_twist, const Vec3& swarm_velocity,
                     const ControlGains& gains);

}  // namespace uavsim

#endif  // UAVSIM_CONTROL_H_
