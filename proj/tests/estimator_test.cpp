#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "rackforce/estimator.hpp"
#include "support/scenarios.hpp"

namespace rackforce {
namespace {

using testing::kDegToRad;

constexpr std::array<ModelVariant, 2> kBoth{ModelVariant::RR, ModelVariant::FlatRoad2DOF};

ParameterSet zero_residual_params() {
  ParameterSet params = testing::zero_shift_params();
  params.tire.residual.D = LoadPolynomial::constant(0.0);
  return params;
}

CleatSpec perpendicular_cleat(double start) {
  CleatSpec c;
  c.start_position_m = start;
  c.length_m = 0.04;
  c.height_m = 0.01;
  c.width_m = 4.0;
  return c;
}

TEST(Variants, KeysAndLabels) {
  EXPECT_EQ(variant_label(ModelVariant::RR), "RR");
  EXPECT_EQ(variant_label(ModelVariant::FlatRoad2DOF), "2DOF-FR");
  EXPECT_EQ(parse_variant_key("rr"), ModelVariant::RR);
  EXPECT_EQ(parse_variant_key("fr"), ModelVariant::FlatRoad2DOF);
  EXPECT_EQ(parse_variant_key("RR"), std::nullopt);
}

TEST(Simulate, FlatRoadStraightIsZero) {
  const auto log = testing::constant_log(10.0, 250.0, 10.0, 0.0);
  const auto result = simulate(log, testing::zero_shift_params(), {}, kBoth);
  for (const auto& trace : result.traces) {
    ASSERT_EQ(trace.samples.size(), log.samples.size());
    for (const auto& s : trace.samples) {
      EXPECT_EQ(s.rack_force_N, 0.0);
      EXPECT_EQ(s.state, VehicleState{});
    }
  }
}

TEST(Simulate, EmptyLog) {
  try {
    simulate({}, ParameterSet{}, {}, kBoth);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyLog);
  }
}

TEST(Simulate, TracesInRequestOrder) {
  const auto log = testing::constant_log(1.0, 100.0, 10.0, 0.01);
  const std::array<ModelVariant, 2> order{ModelVariant::FlatRoad2DOF, ModelVariant::RR};
  const auto result = simulate(log, ParameterSet{}, {}, order);
  ASSERT_EQ(result.traces.size(), 2u);
  EXPECT_EQ(result.traces[0].variant, ModelVariant::FlatRoad2DOF);
  EXPECT_EQ(result.traces[1].variant, ModelVariant::RR);
  EXPECT_THROW(simulate(log, ParameterSet{}, {}, std::array{ModelVariant::RR}).trace(ModelVariant::FlatRoad2DOF),
               Error);
}

TEST(Simulate, SampleEchoAndArclength) {
  auto log = testing::constant_log(1.0, 100.0, 10.0, 0.01);
  log.samples[3].lateral_slope_rad = 0.02;
  const auto trace = simulate_variant(log, ParameterSet{}, {}, ModelVariant::RR);
  EXPECT_EQ(trace.samples[3].lateral_slope_rad, 0.02);
  EXPECT_EQ(trace.samples[0].arclength_m, 0.0);
  EXPECT_NEAR(trace.samples[50].arclength_m, 5.0, 1e-12);
  EXPECT_EQ(trace.samples[0].state, VehicleState{});
  EXPECT_EQ(trace.small_angle_warnings, 0u);
  for (std::size_t i = 1; i < trace.samples.size(); ++i) {
    EXPECT_GT(trace.samples[i].time_s, trace.samples[i - 1].time_s);
  }
}

TEST(Simulate, CrownedRoadAffectsOnlyRR) {
  const auto crowned = testing::crowned_road_log(250.0, 30.0);
  auto flat = crowned;
  for (auto& s : flat.samples) s.lateral_slope_rad = 0.0;

  const ParameterSet params;
  const auto fr_crowned = simulate_variant(crowned, params, {}, ModelVariant::FlatRoad2DOF).rack_forces();
  const auto fr_flat = simulate_variant(flat, params, {}, ModelVariant::FlatRoad2DOF).rack_forces();
  EXPECT_EQ(fr_crowned, fr_flat);

  const auto rr_crowned = simulate_variant(crowned, params, {}, ModelVariant::RR).rack_forces();
  const auto rr_flat = simulate_variant(flat, params, {}, ModelVariant::RR).rack_forces();
  double max_diff = 0.0;
  for (std::size_t i = 0; i < rr_flat.size(); ++i) max_diff = std::max(max_diff, std::abs(rr_crowned[i] - rr_flat[i]));
  EXPECT_GT(max_diff, 10.0);
}

TEST(Simulate, PerpendicularCleatStraightCrossing) {
  const auto params = zero_residual_params();
  const auto log = testing::constant_log(4.0, 250.0, 8.8, 0.0);
  RoadSetup road;
  road.cleats = {perpendicular_cleat(8.8 * 2.0 + params.vehicle.dist_cg_front_m)};
  const auto with = simulate_variant(log, params, road, ModelVariant::RR);
  const auto without = simulate_variant(log, params, {}, ModelVariant::RR);
  bool crossed = false;
  for (std::size_t i = 0; i < with.samples.size(); ++i) {
    EXPECT_LE(std::abs(with.samples[i].rack_force_N - without.samples[i].rack_force_N), 1.0);
    EXPECT_EQ(with.samples[i].front[0].road.effective_lateral_slope_rad, 0.0);
    crossed = crossed || with.samples[i].front[0].load.radial_force_N > 0.0;
  }
  EXPECT_TRUE(crossed);
}

TEST(Simulate, FlatRoadVariantIgnoresRoad) {
  const auto scenario = testing::cleat_slalom_scenario(0.05);
  auto sloped = scenario.log;
  for (std::size_t i = 0; i < sloped.samples.size(); ++i) {
    sloped.samples[i].lateral_slope_rad = 0.1 * std::sin(0.01 * static_cast<double>(i));
    sloped.samples[i].longitudinal_slope_rad = 0.05;
  }
  RoadSetup longitudinal = scenario.road;
  longitudinal.slope_mode = SlopeMode::Longitudinal;
  const ParameterSet params;
  const auto base = simulate_variant(scenario.log, params, {}, ModelVariant::FlatRoad2DOF);
  for (const auto& road : {scenario.road, longitudinal}) {
    const auto other = simulate_variant(sloped, params, road, ModelVariant::FlatRoad2DOF);
    ASSERT_EQ(other.samples.size(), base.samples.size());
    for (std::size_t i = 0; i < base.samples.size(); ++i) {
      ASSERT_EQ(other.samples[i].rack_force_N, base.samples[i].rack_force_N) << i;
      ASSERT_EQ(other.samples[i].state, base.samples[i].state) << i;
    }
  }
}

TEST(Simulate, SelfConsistencyOrdering) {
  auto log = testing::crowned_road_log(250.0, 30.0);
  const ParameterSet params;
  const auto synthetic = simulate_variant(log, params, {}, ModelVariant::RR).rack_forces();
  testing::attach_measurements(log, synthetic);
  const auto metrics = score(simulate(log, params, {}, kBoth), 1.0);
  ASSERT_EQ(metrics.scores.size(), 2u);
  EXPECT_EQ(metrics.scores[0].variant, ModelVariant::RR);
  EXPECT_EQ(metrics.scores[0].mae_N, 0.0);
  EXPECT_GT(metrics.scores[1].mae_N, 0.0);
  EXPECT_EQ(metrics.excluded_samples, 250u);
  EXPECT_EQ(metrics.sample_count, log.samples.size() - 250u);
}

TEST(Simulate, MirrorNegatesRackForce) {
  const auto params = zero_residual_params();
  auto scenario = testing::cleat_slalom_scenario(0.05);
  for (std::size_t i = 0; i < scenario.log.samples.size(); ++i) {
    scenario.log.samples[i].lateral_slope_rad = 0.15 * std::sin(0.003 * static_cast<double>(i));
  }
  const auto a = simulate_variant(scenario.log, params, scenario.road, ModelVariant::RR);
  const auto b = simulate_variant(testing::mirrored(scenario.log), params, testing::mirrored(scenario.road),
                                  ModelVariant::RR);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    ASSERT_NEAR(b.samples[i].rack_force_N, -a.samples[i].rack_force_N, 1e-9) << i;
  }
}

TEST(Simulate, Deterministic) {
  const auto scenario = testing::cleat_slalom_scenario(0.05);
  const ParameterSet params;
  const auto a = simulate(scenario.log, params, scenario.road, kBoth);
  const auto b = simulate(scenario.log, params, scenario.road, kBoth);
  for (std::size_t v = 0; v < 2; ++v) EXPECT_EQ(a.traces[v].rack_forces(), b.traces[v].rack_forces());
}

TEST(Simulate, DegradedSamplesHoldValue) {
  auto log = testing::constant_log(2.0, 100.0, 10.0, 0.02);
  for (std::size_t i = 100; i < 120; ++i) log.samples[i].forward_speed_mps = 0.3;
  const auto trace = simulate_variant(log, ParameterSet{}, {}, ModelVariant::RR);
  EXPECT_FALSE(trace.samples[99].degraded);
  for (std::size_t i = 100; i < 120; ++i) {
    EXPECT_TRUE(trace.samples[i].degraded);
    EXPECT_EQ(trace.samples[i].rack_force_N, trace.samples[99].rack_force_N);
    EXPECT_EQ(trace.samples[i].state, trace.samples[100].state);
  }
  EXPECT_FALSE(trace.samples[120].degraded);
  EXPECT_EQ(trace.samples[120].state, trace.samples[100].state);
}

TEST(Simulate, DegradedFirstSampleIsZero) {
  auto log = testing::constant_log(0.1, 100.0, 0.0, 0.02);
  const auto trace = simulate_variant(log, ParameterSet{}, {}, ModelVariant::RR);
  for (const auto& s : trace.samples) {
    EXPECT_TRUE(s.degraded);
    EXPECT_EQ(s.rack_force_N, 0.0);
  }
}

TEST(Simulate, ErrorsCarryTimestep) {
  auto log = testing::constant_log(1.0, 100.0, 10.0, 0.0);
  log.samples[42].lateral_slope_rad = 1.0;
  try {
    simulate_variant(log, ParameterSet{}, {}, ModelVariant::RR);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SlopeOutOfRange);
    EXPECT_EQ(e.timestep(), 42u);
    EXPECT_NE(std::string(e.what()).find("timestep 42"), std::string::npos);
  }
}

TEST(Simulate, RejectsTooCoarseLog) {
  const auto log = testing::constant_log(1.0, 20.0, 10.0, 0.0);
  try {
    simulate_variant(log, ParameterSet{}, {}, ModelVariant::RR);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidTimeStep);
    EXPECT_EQ(e.timestep(), 0u);
  }
}

TEST(Simulate, NonFiniteInputIsNumericFailure) {
  auto log = testing::constant_log(1.0, 100.0, 10.0, 0.0);
  log.samples[7].steering_angle_rad = std::numeric_limits<double>::quiet_NaN();
  try {
    simulate_variant(log, ParameterSet{}, {}, ModelVariant::FlatRoad2DOF);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonFinite);
    EXPECT_EQ(e.timestep(), 7u);
  }
}

TEST(Simulate, SmallAngleWarningsCounted) {
  auto log = testing::constant_log(0.5, 100.0, 0.6, 0.6);
  const auto trace = simulate_variant(log, ParameterSet{}, {}, ModelVariant::RR);
  EXPECT_GT(trace.small_angle_warnings, 0u);
}

TEST(MeanAbsoluteError, Examples) {
  EXPECT_EQ(mean_absolute_error(std::vector{1.0, 2.0, 3.0}, std::vector{1.0, 2.0, 3.0}), 0.0);
  EXPECT_EQ(mean_absolute_error(std::vector{1.0, 2.0, 3.0}, std::vector{1.0, 1.0, 5.0}), 1.0);
  EXPECT_NEAR(mean_absolute_error(std::vector{1.0, -2.0, 3.5}, std::vector{3.5, 0.5, 6.0}), 2.5, 1e-15);
}

TEST(MeanAbsoluteError, Errors) {
  try {
    mean_absolute_error(std::vector{1.0}, std::vector{1.0, 2.0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LengthMismatch);
  }
  try {
    mean_absolute_error(std::vector<double>{}, std::vector<double>{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptySeries);
  }
}

TEST(Score, NoMeasurementsGivesNoScores) {
  const auto log = testing::constant_log(2.0, 100.0, 10.0, 0.01);
  const auto metrics = score(simulate(log, ParameterSet{}, {}, kBoth), 1.0);
  EXPECT_TRUE(metrics.scores.empty());
  EXPECT_EQ(metrics.sample_count, 0u);
}

TEST(Score, SkipsMissingMeasurements) {
  auto log = testing::constant_log(2.0, 100.0, 10.0, 0.01);
  for (std::size_t i = 0; i < log.samples.size(); i += 2) log.samples[i].measured_rack_force_N = 0.0;
  const auto metrics = score(simulate(log, ParameterSet{}, {}, kBoth), 0.5);
  EXPECT_EQ(metrics.excluded_samples, 25u);
  EXPECT_EQ(metrics.sample_count, 75u);
  EXPECT_EQ(metrics.settle_s, 0.5);
}

}  // namespace
}  // namespace rackforce
