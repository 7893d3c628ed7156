#ifndef UAVSIM_GEOMETRY_H_
#define UAVSIM_GEOMETRY_H_

#include <Eigen/Core>

namespace uavsim {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vector6d = Eigen::Matrix<double, 6, 1>;

// Proper rotation from the inertial frame G into a local frame.
class Rotation3 {
 public:
  Rotation3() : matrix_(Mat3::Identity()) {}
  explicit Rotation3(const Mat3& matrix) : matrix_(matrix) {}

  static Rotation3 Identity() { return Rotation3(); }

  const Mat3& matrix() const { return matrix_; }
  Rotation3 Transposed() const { return Rotation3(matrix_.transpose()); }
  Vec3 operator*(const Vec3& v) const { return matrix_ * v; }
  Rotation3 operator*(const Rotation3& other) const {
    return Rotation3(matrix_ * other.matrix_);
  }

 private:
  Mat3 matrix_;
};

// Rotation angles about the x, y and z axes, radians.
struct EulerAngles {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

struct Pose {
  Vec3 position = Vec3::Zero();  // inertial frame, meters
  EulerAngles orientation;       // each in (-pi, pi]
};

// Spatial velocity: linear (m/s) stacked over angular (rad/s).
struct Twist {
  Vec3 linear = Vec3::Zero();
  Vec3 angular = Vec3::Zero();

  Vector6d AsVector() const;
  static Twist FromVector(const Vector6d& v);
  bool IsFinite() const;
};

// R_G2C = Rx(tx) * Ry(ty) * Rz(tz) with the factor matrices
//
//   Rx = [1 0 0; 0 c s; 0 -s c]
//   Ry = [c 0 -s; 0 1 0; s 0 c]
//   Rz = [c s 0; -s c 0; 0 0 1]
//
// i.e. frame (passive) rotations. Every frame transform in the library is
// built from this one function.
Rotation3 RotationMatrix(double theta_x, double theta_y, double theta_z);
Rotation3 RotationMatrix(const EulerAngles& angles);

// Inverse of RotationMatrix. Near |theta_y| = pi/2 the split between theta_x
// and theta_z is not unique; the returned triple still reproduces `r`.
EulerAngles EulerAnglesFromRotation(const Rotation3& r);

// Wraps into (-pi, pi].
double WrapAngle(double angle);
EulerAngles WrapAngles(const EulerAngles& angles);

// R_G2C(pose) * (point - p_c).
Vec3 WorldToCamera(const Pose& pose, const Vec3& point);

// Fixed mount from the UAV body frame (x forward, y left, z up) to the
// optical frame (x right, y down, z along the optical axis).
const Rotation3& BodyToOptical();

// Inertial-to-optical rotation of the camera rigidly mounted on a UAV whose
// body orientation is `pose.orientation`.
Rotation3 CameraRotation(const Pose& pose);

// CameraRotation(pose) * (point - p_c). Z > 0 means in front of the lens.
Vec3 WorldToOptical(const Pose& pose, const Vec3& point);

// p_q - p_c.
Vec3 RelativePosition(const Vec3& p_q, const Vec3& p_c);

// v_q - v_c - w_c x p_rel.
Vec3 RelativeVelocity(const Vec3& v_q, const Vec3& v_c, const Vec3& w_c,
                      const Vec3& p_rel);

}  // namespace uavsim

#endif  // UAVSIM_GEOMETRY_H_
