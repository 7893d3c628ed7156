#ifndef UAVSIM_METRICS_H_
#define UAVSIM_METRICS_H_

#include <span>
#include <vector>

#include "uavsim/camera.h"
#include "uavsim/geometry.h"

namespace uavsim {

struct NormalizedErrors {
  double e_x = 0.0;  // |u - c_u| / c_u
  double e_y = 0.0;  // |v - c_v| / c_v
  double e_z = 0.0;  // |p_rel| / d_q
};

NormalizedErrors ComputeNormalizedErrors(const PixelPoint& pt, const Vec3& p_rel,
                                         const CameraIntrinsics& intr,
                                         double d_q);

// e_x * e_y.
double ErrorArea(double e_x, double e_y);

// Azimuthal arc seen from the target, degrees.
struct CoverageArc {
  double center = 0.0;      // [0, 360)
  double half_width = 40.0;
};

// Measure of the union of arcs on the circle, degrees in [0, 360].
double ArcUnionMeasure(std::span<const CoverageArc> arcs);

struct ViewCoverage {
  double total = 0.0;      // M * fov
  double effective = 0.0;  // measure of the union of the per-UAV arcs
};

// Each UAV covers an arc of width fov_deg centred on its azimuth around the
// target (top-down projection). Throws DegenerateAzimuth when a UAV is
// horizontally within kCoincidentDistance of the target.
ViewCoverage ComputeViewCoverage(std::span<const Vec3> uav_positions,
                                 const Vec3& target, double fov_deg);

// Azimuth of `point` around `center` in degrees, [0, 360).
double AzimuthDegrees(const Vec3& center, const Vec3& point);

struct UavMetrics {
  int id = 0;
  bool visible = false;  // target in front of the lens
  PixelPoint pixel;      // true projection; meaningful only when visible
  double e_x = 0.0;      // NaN when not visible
  double e_y = 0.0;
  double e_z = 0.0;
  double e_a = 0.0;
  double speed = 0.0;    // m/s
};

struct MetricsRecord {
  int round = 0;
  double time = 0.0;
  std::vector<UavMetrics> uavs;  // ordered by id
  double target_speed = 0.0;
  double total_view = 0.0;       // degrees
  double effective_view = 0.0;   // degrees; NaN if coverage was degenerate
  std::vector<double> inter_uav_distances;  // pairs (i < j) in id order
};

}  // namespace uavsim

#endif  // UAVSIM_METRICS_H_
