#include "rackforce/road.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

namespace rackforce {

namespace {

struct Interval {
  double lo;
  double hi;
};

void check_cam(const CamGeometry& cam) {
  if (!(cam.half_length_m > 0.0) || !(cam.half_height_m > 0.0) || !(cam.spacing_m > 0.0) ||
      !(cam.exponent >= 1.0)) {
    throw Error(ErrorCode::InvalidCamGeometry,
                "cam half-length, half-height and spacing must be > 0 and exponent >= 1");
  }
}

// Arclength interval where the line y = y_m crosses the cleat footprint.
// Empty intervals come back with lo > hi.
Interval track_crossing(const CleatSpec& cleat, double y_m) {
  const double c = std::cos(cleat.yaw_angle_rad);
  const double s = std::sin(cleat.yaw_angle_rad);
  const double half_width = 0.5 * cleat.width_m;

  // Across the cleat: xi = u*c - y*s in [0, length].
  double lo = (y_m * s) / c;
  double hi = (cleat.length_m + y_m * s) / c;

  // Along the cleat: eta = u*s + y*c in [-w/2, w/2].
  if (s == 0.0) {
    if (std::abs(y_m * c) > half_width) return {1.0, 0.0};
  } else {
    double a = (-half_width - y_m * c) / s;
    double b = (half_width - y_m * c) / s;
    if (a > b) std::swap(a, b);
    lo = std::max(lo, a);
    hi = std::min(hi, b);
  }
  return {cleat.start_position_m + lo, cleat.start_position_m + hi};
}

}  // namespace

void validate_cleat(const CleatSpec& cleat) {
  if (!(cleat.length_m > 0.0)) throw Error(ErrorCode::InvalidCleat, "length_m must be > 0");
  if (!(cleat.width_m > 0.0)) throw Error(ErrorCode::InvalidCleat, "width_m must be > 0");
  if (!(std::abs(cleat.yaw_angle_rad) < std::numbers::pi / 2.0)) {
    throw Error(ErrorCode::InvalidCleat, "|yaw_angle_rad| must be < pi/2");
  }
  if (!std::isfinite(cleat.start_position_m) || !std::isfinite(cleat.height_m)) {
    throw Error(ErrorCode::InvalidCleat, "start_position_m and height_m must be finite");
  }
}

double road_height(double s_m, double y_m, std::span<const CleatSpec> cleats) {
  double height = 0.0;
  for (const auto& cleat : cleats) {
    const double c = std::cos(cleat.yaw_angle_rad);
    const double s = std::sin(cleat.yaw_angle_rad);
    const double u = s_m - cleat.start_position_m;
    const double across = u * c - y_m * s;
    const double along = u * s + y_m * c;
    if (across < 0.0 || across > cleat.length_m || std::abs(along) > 0.5 * cleat.width_m) continue;

    const double h = cleat.height_m;
    if (std::abs(h) > std::abs(height) || (std::abs(h) == std::abs(height) && h > height)) {
      height = h;
    }
  }
  return height;
}

double cam_boundary_offset(double dx_m, const CamGeometry& cam) {
  const double r = std::min(std::abs(dx_m) / cam.half_length_m, 1.0);
  const double n = cam.exponent;
  return cam.half_height_m * (1.0 - std::pow(1.0 - std::pow(r, n), 1.0 / n));
}

double cam_rest_height(double center_s_m, double y_m, std::span<const CleatSpec> cleats,
                       const CamGeometry& cam) {
  const double left = center_s_m - cam.half_length_m;
  const double right = center_s_m + cam.half_length_m;

  // The profile along the track is piecewise constant; split the cam footprint
  // at every cleat edge and take the best contact on each piece.
  std::vector<double> breaks{left, right};
  for (const auto& cleat : cleats) {
    const auto [lo, hi] = track_crossing(cleat, y_m);
    if (!(lo < hi)) continue;
    if (lo > left && lo < right) breaks.push_back(lo);
    if (hi > left && hi < right) breaks.push_back(hi);
  }
  std::sort(breaks.begin(), breaks.end());

  double best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double a = breaks[i];
    const double b = breaks[i + 1];
    if (!(b > a)) continue;
    const double h = road_height(0.5 * (a + b), y_m, cleats);
    const double contact = std::clamp(center_s_m, a, b);
    best = std::max(best, h - cam_boundary_offset(contact - center_s_m, cam));
  }
  return best;
}

TrackEnvelope envelope_track(double s_m, double y_m, std::span<const CleatSpec> cleats,
                             const CamGeometry& cam) {
  check_cam(cam);
  const double half_spacing = 0.5 * cam.spacing_m;
  const double front = cam_rest_height(s_m + half_spacing, y_m, cleats, cam);
  const double rear = cam_rest_height(s_m - half_spacing, y_m, cleats, cam);
  return {0.5 * (front + rear), std::atan((rear - front) / cam.spacing_m)};
}

EffectiveRoadPoint effective_profile(double s_m, double y_m, double static_deflection_m,
                                     const RoadInputs& road, const CamGeometry& cam) {
  EffectiveRoadPoint point{
      .effective_height_m = static_deflection_m,
      .effective_lateral_slope_rad =
          road.slope_mode == SlopeMode::Lateral ? road.lateral_slope_rad : 0.0,
      .effective_longitudinal_slope_rad =
          road.slope_mode == SlopeMode::Longitudinal ? road.longitudinal_slope_rad : 0.0,
  };
  if (road.cleats.empty()) return point;

  check_cam(cam);
  if (!(cam.track_half_width_m > 0.0)) {
    throw Error(ErrorCode::InvalidCamGeometry, "cam.track_half_width_m must be > 0");
  }
  const auto left = envelope_track(s_m, y_m + cam.track_half_width_m, road.cleats, cam);
  const auto right = envelope_track(s_m, y_m - cam.track_half_width_m, road.cleats, cam);

  point.effective_height_m += 0.5 * (left.height_m + right.height_m);
  point.effective_longitudinal_slope_rad += 0.5 * (left.slope_rad + right.slope_rad);
  point.effective_lateral_slope_rad +=
      std::atan((left.height_m - right.height_m) / (2.0 * cam.track_half_width_m));
  return point;
}

}  // namespace rackforce
