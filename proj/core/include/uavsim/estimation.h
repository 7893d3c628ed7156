#ifndef UAVSIM_ESTIMATION_H_
#define UAVSIM_ESTIMATION_H_

#include <optional>
#include <variant>

#include "uavsim/dynamics.h"
#include "uavsim/geometry.h"

namespace uavsim {

using Matrix6d = Eigen::Matrix<double, 6, 6>;

// Gaussian belief over [p_q, v_q].
struct Belief {
  Vector6d mean = Vector6d::Zero();
  Matrix6d covariance = Matrix6d::Identity();

  Vec3 position() const { return mean.head<3>(); }
  Vec3 velocity() const { return mean.tail<3>(); }
};

// Ground-truth passthrough.
struct OracleEstimator {};

// Unscented Kalman filter settings. q is the velocity random-walk intensity
// ((m/s^2)^2 * s), r the per-axis position measurement variance (m^2).
struct UkfParams {
  double q = 0.5;
  double r = 1.0;
  double alpha = 1e-3;
  double beta = 2.0;
  double kappa = 0.0;

  void Validate() const;
};

using EstimatorKind = std::variant<OracleEstimator, UkfParams>;

// Constant-velocity UKF over the 6-d target state with direct position
// measurements. Both models are evaluated through sigma points.
class UnscentedKalmanFilter {
 public:
  explicit UnscentedKalmanFilter(const UkfParams& params);

  // p <- p + dt*v, v <- v; adds q*dt to the velocity block.
  // Throws CovarianceNotPD if the prior covariance has no Cholesky factor.
  Belief Predict(const Belief& prior, double dt) const;

  // Fuses a measured target position with variance r per axis.
  Belief Update(const Belief& prior, const Vec3& z) const;

  const UkfParams& params() const { return params_; }

 private:
  static constexpr int kDim = 6;
  static constexpr int kSigmaCount = 2 * kDim + 1;
  using SigmaPoints = Eigen::Matrix<double, kDim, kSigmaCount>;

  SigmaPoints Sigma(const Belief& belief) const;

  UkfParams params_;
  double lambda_;
  Eigen::Matrix<double, kSigmaCount, 1> weights_mean_;
  Eigen::Matrix<double, kSigmaCount, 1> weights_cov_;
};

// Mean = measurement with zero velocity; covariance diag(100 m^2, 100 (m/s)^2).
Belief InitialBelief(const Vec3& measured_position);

struct TargetEstimate {
  Vec3 position = Vec3::Zero();
  Vec3 velocity = Vec3::Zero();
  std::optional<Belief> belief;
};

// One estimation cycle for one UAV. Oracle returns `truth`. The UKF starts
// from InitialBelief on its first measurement, then runs predict + update;
// a missing measurement (occlusion) coasts on predict alone.
// Throws EstimatorUninitialized if the UKF has neither prior nor measurement.
TargetEstimate EstimateTarget(const EstimatorKind& kind,
                              const TargetState& truth,
                              const std::optional<Vec3>& measurement,
                              double dt, const std::optional<Belief>& prior);

}  // namespace uavsim

#endif  // UAVSIM_ESTIMATION_H_
