#include "uavsim/estimation.h"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "uavsim/errors.h"

namespace uavsim {
namespace {

Matrix6d Symmetrized(const Matrix6d& m) { return 0.5 * (m + m.transpose()); }

void RequirePositiveDefinite(const Matrix6d& p, const char* where) {
  Eigen::SelfAdjointEigenSolver<Matrix6d> eig(p, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success || !(eig.eigenvalues().minCoeff() > 0.0)) {
    throw CovarianceNotPD(std::string(where) +
                          ": covariance lost positive definiteness");
  }
}

// Both models commute with a shift of the position origin, so sigma points
// are formed around a zero mean position; the large central weight would
// otherwise amplify the rounding of (mean + offset).
Belief Recentered(const Belief& b) {
  Belief local = b;
  local.mean.head<3>().setZero();
  return local;
}

}  // namespace

void UkfParams::Validate() const {
  if (!(q > 0.0)) throw ValidationError("estimator: q must be > 0");
  if (!(r > 0.0)) throw ValidationError("estimator: r must be > 0");
  if (!(alpha > 0.0)) throw ValidationError("estimator: alpha must be > 0");
  if (!(alpha * alpha * (6.0 + kappa) > 0.0)) {
    throw ValidationError("estimator: alpha^2 * (6 + kappa) must be > 0");
  }
}

UnscentedKalmanFilter::UnscentedKalmanFilter(const UkfParams& params)
    : params_(params) {
  const double n = kDim;
  lambda_ = params.alpha * params.alpha * (n + params.kappa) - n;
  const double w = 0.5 / (n + lambda_);
  weights_mean_.setConstant(w);
  weights_cov_.setConstant(w);
  weights_mean_(0) = lambda_ / (n + lambda_);
  weights_cov_(0) =
      weights_mean_(0) + (1.0 - params.alpha * params.alpha + params.beta);
}

UnscentedKalmanFilter::SigmaPoints UnscentedKalmanFilter::Sigma(
    const Belief& belief) const {
  Eigen::LLT<Matrix6d> llt((kDim + lambda_) * belief.covariance);
  if (llt.info() != Eigen::Success) {
    throw CovarianceNotPD("sigma-point square root failed");
  }
  const Matrix6d root = llt.matrixL();
  SigmaPoints points;
  points.col(0) = belief.mean;
  for (int i = 0; i < kDim; ++i) {
    points.col(1 + i) = belief.mean + root.col(i);
    points.col(1 + kDim + i) = belief.mean - root.col(i);
  }
  return points;
}

// Weighted statistics are formed from offsets to the central point: the
// central weight is O(1/alpha^2) and summing raw points would cancel badly.
template <int Rows>
static Eigen::Matrix<double, Rows, 1> WeightedMean(
    const Eigen::Matrix<double, Rows, 13>& pts,
    const Eigen::Matrix<double, 13, 1>& w) {
  Eigen::Matrix<double, Rows, 1> mean = pts.col(0);
  for (int i = 1; i < 13; ++i) mean += w(i) * (pts.col(i) - pts.col(0));
  return mean;
}

Belief UnscentedKalmanFilter::Predict(const Belief& prior, double dt) const {
  const Vec3 origin = prior.position();
  const SigmaPoints x = Sigma(Recentered(prior));
  SigmaPoints y;
  for (int i = 0; i < kSigmaCount; ++i) {
    y.col(i).head<3>() = x.col(i).head<3>() + dt * x.col(i).tail<3>();
    y.col(i).tail<3>() = x.col(i).tail<3>();
  }
  Belief out;
  out.mean = WeightedMean<kDim>(y, weights_mean_);
  Matrix6d cov = Matrix6d::Zero();
  for (int i = 0; i < kSigmaCount; ++i) {
    const Vector6d d = y.col(i) - out.mean;
    cov += weights_cov_(i) * d * d.transpose();
  }
  cov.bottomRightCorner<3, 3>().diagonal().array() += params_.q * dt;
  out.covariance = Symmetrized(cov);
  RequirePositiveDefinite(out.covariance, "predict");
  out.mean.head<3>() += origin;
  return out;
}

Belief UnscentedKalmanFilter::Update(const Belief& prior, const Vec3& z) const {
  const Vec3 origin = prior.position();
  const SigmaPoints x = Sigma(Recentered(prior));
  Eigen::Matrix<double, 3, kSigmaCount> zs = x.topRows<3>();
  const Vec3 z_mean = WeightedMean<3>(zs, weights_mean_);
  const Vector6d x_mean = WeightedMean<kDim>(x, weights_mean_);

  Mat3 s = Mat3::Identity() * params_.r;
  Eigen::Matrix<double, kDim, 3> cross = Eigen::Matrix<double, kDim, 3>::Zero();
  for (int i = 0; i < kSigmaCount; ++i) {
    const Vec3 dz = zs.col(i) - z_mean;
    s += weights_cov_(i) * dz * dz.transpose();
    cross += weights_cov_(i) * (x.col(i) - x_mean) * dz.transpose();
  }
  Eigen::LLT<Mat3> s_llt(s);
  if (s_llt.info() != Eigen::Success) {
    throw CovarianceNotPD("innovation covariance is not positive definite");
  }
  // K = Pxz S^-1, computed as (S^-1 Pxz^T)^T since S is symmetric.
  const Eigen::Matrix<double, kDim, 3> gain =
      s_llt.solve(cross.transpose()).transpose();

  Belief out;
  out.mean = x_mean + gain * ((z - origin) - z_mean);
  out.covariance = Symmetrized(prior.covariance - gain * s * gain.transpose());
  RequirePositiveDefinite(out.covariance, "update");
  out.mean.head<3>() += origin;
  return out;
}

Belief InitialBelief(const Vec3& measured_position) {
  Belief b;
  b.mean << measured_position, Vec3::Zero();
  b.covariance = Matrix6d::Identity() * 100.0;
  return b;
}

TargetEstimate EstimateTarget(const EstimatorKind& kind,
                              const TargetState& truth,
                              const std::optional<Vec3>& measurement,
                              double dt, const std::optional<Belief>& prior) {
  if (std::holds_alternative<OracleEstimator>(kind)) {
    return {truth.position, truth.velocity, std::nullopt};
  }
  const UnscentedKalmanFilter ukf(std::get<UkfParams>(kind));
  Belief belief;
  if (!prior) {
    if (!measurement) {
      throw EstimatorUninitialized("no target measurement to start the filter");
    }
    belief = InitialBelief(*measurement);
  } else {
    belief = ukf.Predict(*prior, dt);
    if (measurement) belief = ukf.Update(belief, *measurement);
  }
  return {belief.position(), belief.velocity(), belief};
}

}  // namespace uavsim
