#pragma once

#include <span>

#include "rackforce/core.hpp"

namespace rackforce {

struct EffectiveRoadPoint {
  double effective_height_m = 0.0;               // w
  double effective_lateral_slope_rad = 0.0;      // beta_x
  double effective_longitudinal_slope_rad = 0.0;  // beta_y

  bool operator==(const EffectiveRoadPoint&) const = default;
};

struct TrackEnvelope {
  double height_m = 0.0;
  double slope_rad = 0.0;
};

// Throws InvalidCleat when a cleat violates its invariants.
void validate_cleat(const CleatSpec& cleat);

// Raw road height at arclength `s_m` and lateral offset `y_m` (positive to the
// left of the track centerline). Overlapping cleats resolve to the
// largest-magnitude height, positive on ties.
double road_height(double s_m, double y_m, std::span<const CleatSpec> cleats);

// Vertical distance from the lowest point of the cam's lower boundary up to the
// boundary at horizontal offset `dx_m` from the cam center. Zero at the center,
// half_height_m at |dx| = half_length_m.
double cam_boundary_offset(double dx_m, const CamGeometry& cam);

// Height of the lowest point of a single cam centred at `center_s_m` resting on
// the raw profile along the track at `y_m`.
double cam_rest_height(double center_s_m, double y_m, std::span<const CleatSpec> cleats,
                       const CamGeometry& cam);

// Tandem of two cams spaced cam.spacing_m apart and centred on `s_m`. Returns
// the tandem midpoint height and atan((rear - front) / spacing).
TrackEnvelope envelope_track(double s_m, double y_m, std::span<const CleatSpec> cleats,
                             const CamGeometry& cam);

// Effective road seen by a tire centred at (s_m, y_m). Cleat-free roads bypass
// enveloping and report the road slopes directly. With cleats, the tire is
// sampled on two tracks at y_m +/- cam.track_half_width_m; beta_x is positive
// when the left (+y) track sits higher.
EffectiveRoadPoint effective_profile(double s_m, double y_m, double static_deflection_m,
                                     const RoadInputs& road, const CamGeometry& cam);

}  // namespace rackforce
