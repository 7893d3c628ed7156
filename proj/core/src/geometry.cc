#include "uavsim/geometry.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Geometry>

namespace uavsim {

Vector6d Twist::AsVector() const {
  Vector6d v;
  v << linear, angular;
  return v;
}

Twist Twist::FromVector(const Vector6d& v) {
  return Twist{v.head<3>(), v.tail<3>()};
}

bool Twist::IsFinite() const {
  return linear.allFinite() && angular.allFinite();
}

Rotation3 RotationMatrix(double theta_x, double theta_y, double theta_z) {
  const double cx = std::cos(theta_x), sx = std::sin(theta_x);
  const double cy = std::cos(theta_y), sy = std::sin(theta_y);
  const double cz = std::cos(theta_z), sz = std::sin(theta_z);
  Mat3 rx, ry, rz;
  rx << 1, 0, 0,
        0, cx, sx,
        0, -sx, cx;
  ry << cy, 0, -sy,
        0, 1, 0,
        sy, 0, cy;
  rz << cz, sz, 0,
        -sz, cz, 0,
        0, 0, 1;
  return Rotation3(rx * ry * rz);
}

Rotation3 RotationMatrix(const EulerAngles& angles) {
  return RotationMatrix(angles.x, angles.y, angles.z);
}

EulerAngles EulerAnglesFromRotation(const Rotation3& r) {
  // Rx*Ry*Rz has first row [cy*cz, cy*sz, -sy] and last column
  // [-sy, sx*cy, cx*cy].
  const Mat3& m = r.matrix();
  const double sy = std::clamp(-m(0, 2), -1.0, 1.0);
  EulerAngles out;
  out.y = std::asin(sy);
  const double cy = std::hypot(m(0, 0), m(0, 1));
  if (cy > 1e-12) {
    out.x = std::atan2(m(1, 2), m(2, 2));
    out.z = std::atan2(m(0, 1), m(0, 0));
  } else {
    // Gimbal lock: put the whole residual rotation into theta_z.
    // With cy = 0 the middle row reads [-cx*sz + sx*sy*cz, cx*cz + sx*sy*sz, 0].
    out.x = 0.0;
    out.z = std::atan2(-m(1, 0), m(1, 1));
  }
  return WrapAngles(out);
}

double WrapAngle(double angle) {
  constexpr double kPi = std::numbers::pi;
  double wrapped = std::remainder(angle, 2.0 * kPi);  // [-pi, pi]
  if (wrapped <= -kPi) wrapped += 2.0 * kPi;
  return wrapped;
}

EulerAngles WrapAngles(const EulerAngles& angles) {
  return {WrapAngle(angles.x), WrapAngle(angles.y), WrapAngle(angles.z)};
}

Vec3 WorldToCamera(const Pose& pose, const Vec3& point) {
  return RotationMatrix(pose.orientation) * (point - pose.position);
}

const Rotation3& BodyToOptical() {
  static const Rotation3 kMount = [] {
    Mat3 m;
    m << 0, -1, 0,
         0, 0, -1,
         1, 0, 0;
    return Rotation3(m);
  }();
  return kMount;
}

Rotation3 CameraRotation(const Pose& pose) {
  return BodyToOptical() * RotationMatrix(pose.orientation);
}

Vec3 WorldToOptical(const Pose& pose, const Vec3& point) {
  return CameraRotation(pose) * (point - pose.position);
}

Vec3 RelativePosition(const Vec3& p_q, const Vec3& p_c) { return p_q - p_c; }

Vec3 RelativeVelocity(const Vec3& v_q, const Vec3& v_c, const Vec3& w_c,
                      const Vec3& p_rel) {
  return v_q - v_c - w_c.cross(p_rel);
}

}  // namespace uavsim
