#ifndef UAVSIM_CAMERA_H_
#define UAVSIM_CAMERA_H_

#include "uavsim/geometry.h"

namespace uavsim {

// Below this depth (meters) a point is treated as behind or on the lens plane.
inline constexpr double kDepthEpsilon = 1e-6;

struct CameraIntrinsics {
  double f_x = 381.36;  // pixels
  double f_y = 381.36;
  double c_u = 320.5;
  double c_v = 240.5;
  double width = 640.0;
  double height = 480.0;
  double fov_az = 80.0;  // horizontal view angle used for coverage, degrees

  // Throws ValidationError naming the first violated invariant.
  void Validate() const;
};

struct PixelPoint {
  double u = 0.0;
  double v = 0.0;
  bool in_image = false;
};

// Normalized image-plane feature plus inverse depth: [X/Z, Y/Z, 1/Z].
struct FeatureState {
  double x1 = 0.0;
  double x2 = 0.0;
  double x3 = 0.0;  // 1/m, > 0

  Vec3 AsVector() const { return {x1, x2, x3}; }
  static FeatureState FromVector(const Vec3& v) { return {v.x(), v.y(), v.z()}; }
};

struct NormalizedPoint {
  double x1 = 0.0;
  double x2 = 0.0;
};

// Pinhole projection of an optical-frame point. Throws DepthNonPositive when
// Z <= kDepthEpsilon. Points off the sensor are returned with in_image false.
PixelPoint Project(const Vec3& p_cam, const CameraIntrinsics& intr);

NormalizedPoint PixelToFeature(const PixelPoint& pt,
                               const CameraIntrinsics& intr);

bool InImage(double u, double v, const CameraIntrinsics& intr);

// Throws DepthNonPositive when Z <= kDepthEpsilon.
FeatureState ComputeFeatureState(const Vec3& p_cam);

}  // namespace uavsim

#endif  // UAVSIM_CAMERA_H_
