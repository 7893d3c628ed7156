#include "uavsim/metrics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "uavsim/control.h"
#include "uavsim/errors.h"

namespace uavsim {

NormalizedErrors ComputeNormalizedErrors(const PixelPoint& pt, const Vec3& p_rel,
                                         const CameraIntrinsics& intr,
                                         double d_q) {
  return {std::abs(pt.u - intr.c_u) / intr.c_u,
          std::abs(pt.v - intr.c_v) / intr.c_v, p_rel.norm() / d_q};
}

double ErrorArea(double e_x, double e_y) { return e_x * e_y; }

double ArcUnionMeasure(std::span<const CoverageArc> arcs) {
  std::vector<std::pair<double, double>> pieces;
  pieces.reserve(2 * arcs.size());
  for (const CoverageArc& arc : arcs) {
    const double width = 2.0 * arc.half_width;
    if (width <= 0.0) continue;
    if (width >= 360.0) return 360.0;
    double lo = std::fmod(arc.center - arc.half_width, 360.0);
    if (lo < 0.0) lo += 360.0;
    const double hi = lo + width;
    if (hi <= 360.0) {
      pieces.emplace_back(lo, hi);
    } else {
      // Split at the 0/360 seam.
      pieces.emplace_back(lo, 360.0);
      pieces.emplace_back(0.0, hi - 360.0);
    }
  }
  std::sort(pieces.begin(), pieces.end());
  double covered = 0.0;
  double cur_lo = 0.0, cur_hi = -1.0;
  for (const auto& [lo, hi] : pieces) {
    if (lo > cur_hi) {
      if (cur_hi > cur_lo) covered += cur_hi - cur_lo;
      cur_lo = lo;
      cur_hi = hi;
    } else {
      cur_hi = std::max(cur_hi, hi);
    }
  }
  if (cur_hi > cur_lo) covered += cur_hi - cur_lo;
  return std::min(covered, 360.0);
}

double AzimuthDegrees(const Vec3& center, const Vec3& point) {
  double deg = std::atan2(point.y() - center.y(), point.x() - center.x()) *
               180.0 / std::numbers::pi;
  if (deg < 0.0) deg += 360.0;
  if (deg >= 360.0) deg -= 360.0;
  return deg;
}

ViewCoverage ComputeViewCoverage(std::span<const Vec3> uav_positions,
                                 const Vec3& target, double fov_deg) {
  std::vector<CoverageArc> arcs;
  arcs.reserve(uav_positions.size());
  for (const Vec3& p : uav_positions) {
    if (std::hypot(p.x() - target.x(), p.y() - target.y()) <=
        kCoincidentDistance) {
      throw DegenerateAzimuth("UAV is directly above the target");
    }
    arcs.push_back({AzimuthDegrees(target, p), 0.5 * fov_deg});
  }
  return {static_cast<double>(uav_positions.size()) * fov_deg,
          ArcUnionMeasure(arcs)};
}

}  // namespace uavsim
