#pragma once

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "rackforce/core.hpp"
#include "rackforce/road.hpp"
#include "rackforce/tire.hpp"

namespace rackforce {

enum class ModelVariant : std::uint8_t {
  RR,            // rigid-ring tire chain on the effective road profile
  FlatRoad2DOF,  // same vehicle model, road ignored
};

// "RR" / "2DOF-FR"
std::string_view variant_label(ModelVariant variant);
// "rr" / "fr", as used in CLI flags and file names.
std::string_view variant_key(ModelVariant variant);
std::optional<ModelVariant> parse_variant_key(std::string_view key);

struct LogSample {
  double time_s = 0.0;
  double steering_angle_rad = 0.0;
  double forward_speed_mps = 0.0;
  double lateral_slope_rad = 0.0;
  double longitudinal_slope_rad = 0.0;
  std::optional<double> measured_rack_force_N;
};

// Uniformly sampled driving record.
struct DrivingLog {
  double rate_hz = 250.0;
  std::vector<LogSample> samples;

  double dt_s() const { return 1.0 / rate_hz; }
  bool has_measurements() const;
};

// Road description that does not vary with time.
struct RoadSetup {
  SlopeMode slope_mode = SlopeMode::Lateral;
  std::vector<CleatSpec> cleats;
};

struct FrontTireSample {
  EffectiveRoadPoint road;
  TireLoadState load;
  TireOutput output;
};

struct EstimateSample {
  double time_s = 0.0;
  double steering_angle_rad = 0.0;
  double forward_speed_mps = 0.0;
  double lateral_slope_rad = 0.0;
  double longitudinal_slope_rad = 0.0;
  // Arclength of the center of gravity along the track.
  double arclength_m = 0.0;
  // State at the start of the step.
  VehicleState state;
  double front_slip_rad = 0.0;
  double rear_slip_rad = 0.0;
  double rear_lateral_force_N = 0.0;
  std::array<FrontTireSample, 2> front;  // left, right
  double rack_force_N = 0.0;
  std::optional<double> measured_rack_force_N;
  // Speed below the floor: estimate held from the previous sample.
  bool degraded = false;
};

struct VariantTrace {
  ModelVariant variant = ModelVariant::RR;
  std::vector<EstimateSample> samples;
  // Accepted samples with |v| >= u, outside the small-angle regime.
  std::size_t small_angle_warnings = 0;

  std::vector<double> rack_forces() const;
};

struct SimulationResult {
  std::vector<VariantTrace> traces;

  const VariantTrace& trace(ModelVariant variant) const;
};

// Runs every requested variant over the whole log starting from rest. Module
// errors are rethrown with the failing timestep attached; a non-finite value
// anywhere in a sample raises NonFinite.
SimulationResult simulate(const DrivingLog& log, const ParameterSet& params, const RoadSetup& road,
                          std::span<const ModelVariant> variants);

// Single-variant run, the building block of simulate().
VariantTrace simulate_variant(const DrivingLog& log, const ParameterSet& params, const RoadSetup& road,
                              ModelVariant variant);

double mean_absolute_error(std::span<const double> estimates, std::span<const double> measurements);

struct VariantScore {
  ModelVariant variant = ModelVariant::RR;
  double mae_N = 0.0;
};

struct Metrics {
  std::vector<VariantScore> scores;
  std::size_t sample_count = 0;      // samples scored
  std::size_t excluded_samples = 0;  // inside the settling window
  double settle_s = 1.0;
};

// Scores each trace against the measured channel, skipping the first
// `settle_s` seconds and samples without a measurement. Returns no scores when
// nothing is left to compare.
Metrics score(const SimulationResult& result, double settle_s);

}  // namespace rackforce
