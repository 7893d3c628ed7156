#include "uavsim/camera.h"

#include <cmath>
#include <string>

#include "uavsim/errors.h"

namespace uavsim {
namespace {

void CheckDepth(const Vec3& p_cam) {
  if (!(p_cam.z() > kDepthEpsilon)) {
    throw DepthNonPositive("target depth " + std::to_string(p_cam.z()) +
                           " m is not in front of the camera");
  }
}

}  // namespace

void CameraIntrinsics::Validate() const {
  if (!(f_x > 0.0) || !(f_y > 0.0)) {
    throw ValidationError("intrinsics: focal lengths must be > 0");
  }
  if (!(c_u > 0.0 && c_u < width)) {
    throw ValidationError("intrinsics: c_u must lie in (0, width)");
  }
  if (!(c_v > 0.0 && c_v < height)) {
    throw ValidationError("intrinsics: c_v must lie in (0, height)");
  }
  if (!(fov_az > 0.0 && fov_az <= 180.0)) {
    throw ValidationError("intrinsics: fov_az must lie in (0, 180]");
  }
}

bool InImage(double u, double v, const CameraIntrinsics& intr) {
  return u >= 0.0 && u <= intr.width && v >= 0.0 && v <= intr.height;
}

PixelPoint Project(const Vec3& p_cam, const CameraIntrinsics& intr) {
  CheckDepth(p_cam);
  PixelPoint pt;
  pt.u = intr.f_x * (p_cam.x() / p_cam.z()) + intr.c_u;
  pt.v = intr.f_y * (p_cam.y() / p_cam.z()) + intr.c_v;
  pt.in_image = InImage(pt.u, pt.v, intr);
  return pt;
}

NormalizedPoint PixelToFeature(const PixelPoint& pt,
                               const CameraIntrinsics& intr) {
  return {(pt.u - intr.c_u) / intr.f_x, (pt.v - intr.c_v) / intr.f_y};
}

FeatureState ComputeFeatureState(const Vec3& p_cam) {
  CheckDepth(p_cam);
  return {p_cam.x() / p_cam.z(), p_cam.y() / p_cam.z(), 1.0 / p_cam.z()};
}

}  // namespace uavsim
