#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "rackforce/road.hpp"
#include "support/oracles.hpp"

namespace rackforce {
namespace {

CleatSpec cleat_at(double start, double height = 0.01, double yaw = 0.0) {
  CleatSpec c;
  c.start_position_m = start;
  c.length_m = 0.04;
  c.height_m = height;
  c.width_m = 4.0;
  c.yaw_angle_rad = yaw;
  return c;
}

TEST(RoadHeight, EmptyMapIsFlat) { EXPECT_EQ(road_height(0.0, 0.0, {}), 0.0); }

TEST(RoadHeight, InsideAndOutsideFootprint) {
  const std::vector<CleatSpec> cleats{cleat_at(10.0)};
  EXPECT_EQ(road_height(10.02, 0.0, cleats), 0.01);
  EXPECT_EQ(road_height(9.99, 0.0, cleats), 0.0);
  EXPECT_EQ(road_height(10.05, 0.0, cleats), 0.0);
  EXPECT_EQ(road_height(10.02, 2.1, cleats), 0.0);
}

TEST(RoadHeight, YawedFootprint) {
  // 45 deg: the leading edge is at s = 10 + y along the track.
  const std::vector<CleatSpec> cleats{cleat_at(10.0, 0.02, std::numbers::pi / 4.0)};
  EXPECT_EQ(road_height(10.02, 0.0, cleats), 0.02);
  EXPECT_EQ(road_height(10.02, 0.5, cleats), 0.0);
  EXPECT_EQ(road_height(10.52, 0.5, cleats), 0.02);
  EXPECT_EQ(road_height(9.52, -0.5, cleats), 0.02);
}

TEST(RoadHeight, OverlapTakesLargestMagnitude) {
  const std::vector<CleatSpec> cleats{cleat_at(10.0, 0.01), cleat_at(10.0, -0.03), cleat_at(10.0, 0.02)};
  EXPECT_EQ(road_height(10.02, 0.0, cleats), -0.03);
  const std::vector<CleatSpec> tie{cleat_at(10.0, -0.02), cleat_at(10.0, 0.02)};
  EXPECT_EQ(road_height(10.02, 0.0, tie), 0.02);
}

TEST(ValidateCleat, RejectsBadGeometry) {
  auto c = cleat_at(0.0);
  c.length_m = 0.0;
  EXPECT_THROW(validate_cleat(c), Error);
  c = cleat_at(0.0);
  c.width_m = -1.0;
  EXPECT_THROW(validate_cleat(c), Error);
  c = cleat_at(0.0, 0.01, std::numbers::pi / 2.0);
  EXPECT_THROW(validate_cleat(c), Error);
  EXPECT_NO_THROW(validate_cleat(cleat_at(0.0, -0.05, 1.2)));
}

TEST(CamBoundary, EllipseShape) {
  CamGeometry cam;
  EXPECT_EQ(cam_boundary_offset(0.0, cam), 0.0);
  EXPECT_NEAR(cam_boundary_offset(cam.half_length_m, cam), cam.half_height_m, 1e-15);
  const double x = 0.6 * cam.half_length_m;
  EXPECT_NEAR(cam_boundary_offset(x, cam), cam.half_height_m * (1.0 - 0.8), 1e-15);
  EXPECT_EQ(cam_boundary_offset(-x, cam), cam_boundary_offset(x, cam));
}

TEST(EnvelopeTrack, FlatRoad) {
  const auto env = envelope_track(3.0, 0.0, {}, CamGeometry{});
  EXPECT_EQ(env.height_m, 0.0);
  EXPECT_EQ(env.slope_rad, 0.0);
}

TEST(EnvelopeTrack, FarBehindCleat) {
  const std::vector<CleatSpec> cleats{cleat_at(10.0)};
  const auto env = envelope_track(5.0, 0.0, cleats, CamGeometry{});
  EXPECT_EQ(env.height_m, 0.0);
  EXPECT_EQ(env.slope_rad, 0.0);
}

TEST(EnvelopeTrack, InvalidCam) {
  CamGeometry cam;
  cam.half_length_m = 0.0;
  EXPECT_THROW(envelope_track(0.0, 0.0, {}, cam), Error);
  cam = CamGeometry{};
  cam.spacing_m = -0.1;
  try {
    envelope_track(0.0, 0.0, {}, cam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidCamGeometry);
  }
}

TEST(EnvelopeTrack, StraddlingStepEdge) {
  // A long 1 cm step so the cams straddle a single edge.
  CleatSpec step = cleat_at(10.0);
  step.length_m = 5.0;
  const std::vector<CleatSpec> cleats{step};
  const CamGeometry cam;
  for (double s : {9.90, 9.95, 9.98, 10.0, 10.02, 10.05}) {
    const auto env = envelope_track(s, 0.0, cleats, cam);
    const auto brute = testing::brute_force_envelope(s, 0.0, cleats, cam, 1e-4);
    EXPECT_GT(env.height_m, 0.0) << s;
    EXPECT_LE(env.height_m, 0.01) << s;
    EXPECT_LE(std::abs(env.slope_rad), std::atan(0.01 / cam.spacing_m) + 1e-15) << s;
    EXPECT_NEAR(env.height_m, brute.height_m, 1e-9) << s;
    EXPECT_NEAR(env.slope_rad, brute.slope_rad, 1e-9) << s;
  }
}

TEST(EnvelopeTrack, MatchesBruteForceOnRandomCleats) {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> length(0.01, 0.3);
  std::uniform_real_distribution<double> height(-0.04, 0.04);
  std::uniform_real_distribution<double> yaw(-1.2, 1.2);
  std::uniform_real_distribution<double> lateral(-1.5, 1.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CamGeometry cam;
  for (int trial = 0; trial < 8; ++trial) {
    CleatSpec c;
    c.start_position_m = 5.0;
    c.length_m = length(rng);
    c.height_m = height(rng);
    c.width_m = 0.5 + 3.0 * unit(rng);
    c.yaw_angle_rad = yaw(rng);
    const std::vector<CleatSpec> cleats{c};
    const double y = lateral(rng) * 0.5 * c.width_m;
    for (double s = 4.3; s < 6.0; s += 0.0131) {
      const auto env = envelope_track(s, y, cleats, cam);
      const auto brute = testing::brute_force_envelope(s, y, cleats, cam, 1e-4);
      ASSERT_NEAR(env.height_m, brute.height_m, 1e-9) << "trial " << trial << " s " << s;
    }
  }
}

TEST(EnvelopeTrack, SlopeShrinksWithCamSize) {
  // Below about 0.8 * spacing of reach the peak saturates at atan(h / spacing).
  CleatSpec step = cleat_at(10.0, 0.02);
  step.length_m = 5.0;
  const std::vector<CleatSpec> cleats{step};
  double previous = std::numeric_limits<double>::infinity();
  for (double half_length : {0.15, 0.25, 0.35}) {
    CamGeometry cam;
    cam.half_length_m = half_length;
    double peak = 0.0;
    for (double s = 9.0; s < 11.0; s += 0.001) {
      peak = std::max(peak, std::abs(envelope_track(s, 0.0, cleats, cam).slope_rad));
    }
    EXPECT_TRUE(std::isfinite(peak));
    EXPECT_LT(peak, previous) << half_length;
    previous = peak;
  }
}

TEST(EffectiveProfile, NoCleatsBypassesEnveloping) {
  RoadInputs road;
  const auto p = effective_profile(12.0, 0.8, 0.0235, road, CamGeometry{});
  EXPECT_EQ(p, (EffectiveRoadPoint{0.0235, 0.0, 0.0}));

  road.lateral_slope_rad = 0.1;
  road.longitudinal_slope_rad = 0.05;
  road.slope_mode = SlopeMode::Lateral;
  EXPECT_EQ(effective_profile(12.0, 0.8, 0.02, road, CamGeometry{}), (EffectiveRoadPoint{0.02, 0.1, 0.0}));
  road.slope_mode = SlopeMode::Longitudinal;
  EXPECT_EQ(effective_profile(12.0, 0.8, 0.02, road, CamGeometry{}), (EffectiveRoadPoint{0.02, 0.0, 0.05}));
}

TEST(EffectiveProfile, PerpendicularCleatHasNoLateralSlope) {
  RoadInputs road;
  road.cleats = {cleat_at(10.0)};
  bool touched = false;
  for (double s = 9.7; s < 10.3; s += 0.003) {
    for (double y : {0.8, -0.8}) {
      const auto p = effective_profile(s, y, 0.02, road, CamGeometry{});
      EXPECT_EQ(p.effective_lateral_slope_rad, 0.0);
      touched = touched || p.effective_height_m > 0.02;
    }
  }
  EXPECT_TRUE(touched);
}

TEST(EffectiveProfile, ObliqueCleatLateralSlopeFlipsWithYaw) {
  RoadInputs road;
  road.cleats = {cleat_at(10.0, 0.02, 0.4)};
  RoadInputs mirrored = road;
  mirrored.cleats[0].yaw_angle_rad = -0.4;
  bool nonzero = false;
  for (double s = 9.0; s < 11.0; s += 0.002) {
    const auto p = effective_profile(s, 0.0, 0.02, road, CamGeometry{});
    const auto q = effective_profile(s, 0.0, 0.02, mirrored, CamGeometry{});
    EXPECT_EQ(q.effective_lateral_slope_rad, -p.effective_lateral_slope_rad) << s;
    EXPECT_EQ(q.effective_height_m, p.effective_height_m) << s;
    EXPECT_EQ(q.effective_longitudinal_slope_rad, p.effective_longitudinal_slope_rad) << s;
    nonzero = nonzero || p.effective_lateral_slope_rad != 0.0;
  }
  EXPECT_TRUE(nonzero);
}

TEST(EffectiveProfile, MirrorSwapsTires) {
  // Reflecting the road about the centerline maps the left tire onto the right.
  RoadInputs road;
  road.cleats = {cleat_at(10.0, 0.03, 0.7), cleat_at(10.5, -0.02, -0.3)};
  road.lateral_slope_rad = 0.05;
  RoadInputs mirrored = road;
  mirrored.lateral_slope_rad = -0.05;
  for (auto& c : mirrored.cleats) c.yaw_angle_rad = -c.yaw_angle_rad;
  for (double s = 8.5; s < 12.5; s += 0.004) {
    const auto left = effective_profile(s, 0.8, 0.02, road, CamGeometry{});
    const auto right = effective_profile(s, -0.8, 0.02, mirrored, CamGeometry{});
    EXPECT_EQ(right.effective_height_m, left.effective_height_m);
    EXPECT_EQ(right.effective_longitudinal_slope_rad, left.effective_longitudinal_slope_rad);
    EXPECT_EQ(right.effective_lateral_slope_rad, -left.effective_lateral_slope_rad);
  }
}

TEST(EffectiveProfile, LocalityAndBounds) {
  RoadInputs road;
  road.cleats = {cleat_at(10.0, 0.03, 0.3), cleat_at(14.0, 0.01, -0.5)};
  const CamGeometry cam;
  const double z_a = 0.0235;
  const EffectiveRoadPoint flat{z_a, 0.0, 0.0};
  for (double s = 0.0; s < 20.0; s += 0.0037) {
    const auto p = effective_profile(s, 0.8, z_a, road, cam);
    EXPECT_GE(p.effective_height_m - z_a, 0.0);
    EXPECT_LE(p.effective_height_m - z_a, 0.03 + 1e-15);
    EXPECT_LT(std::abs(p.effective_lateral_slope_rad), std::numbers::pi / 2.0);
    EXPECT_LT(std::abs(p.effective_longitudinal_slope_rad), std::numbers::pi / 2.0);

    // Reach of the tandem plus the cleat's along-track extent at the tire.
    bool far = true;
    for (const auto& c : road.cleats) {
      const double reach = cam.spacing_m + cam.half_length_m + c.length_m / std::cos(c.yaw_angle_rad) +
                           (0.8 + cam.track_half_width_m) * std::abs(std::tan(c.yaw_angle_rad));
      if (std::abs(s - c.start_position_m) <= reach) far = false;
    }
    if (far) {
      EXPECT_EQ(p, flat) << s;
    }
  }
}

}  // namespace
}  // namespace rackforce
