#include "rackforce/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <initializer_list>
#include <string>

#include "rackforce/vehicle.hpp"

namespace rackforce {

std::string_view variant_label(ModelVariant variant) {
  return variant == ModelVariant::RR ? "RR" : "2DOF-FR";
}

std::string_view variant_key(ModelVariant variant) { return variant == ModelVariant::RR ? "rr" : "fr"; }

std::optional<ModelVariant> parse_variant_key(std::string_view key) {
  if (key == "rr") return ModelVariant::RR;
  if (key == "fr") return ModelVariant::FlatRoad2DOF;
  return std::nullopt;
}

bool DrivingLog::has_measurements() const {
  return std::any_of(samples.begin(), samples.end(),
                     [](const LogSample& s) { return s.measured_rack_force_N.has_value(); });
}

std::vector<double> VariantTrace::rack_forces() const {
  std::vector<double> out;
  out.reserve(samples.size());
  for (const auto& s : samples) out.push_back(s.rack_force_N);
  return out;
}

const VariantTrace& SimulationResult::trace(ModelVariant variant) const {
  for (const auto& t : traces) {
    if (t.variant == variant) return t;
  }
  throw Error(ErrorCode::ConfigError, "variant " + std::string(variant_label(variant)) + " was not simulated");
}

namespace {

void require_finite(std::initializer_list<double> values, const char* what) {
  for (double v : values) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, std::string("non-finite ") + what);
  }
}

void check_sample(const EstimateSample& s) {
  require_finite({s.front_slip_rad, s.rear_slip_rad, s.rear_lateral_force_N, s.rack_force_N}, "slip or force");
  for (const auto& tire : s.front) {
    require_finite({tire.road.effective_height_m, tire.road.effective_lateral_slope_rad,
                    tire.road.effective_longitudinal_slope_rad},
                   "effective road point");
    require_finite({tire.load.normal_force_N, tire.load.static_deflection_m, tire.load.radial_deflection_m,
                    tire.load.radial_force_N, tire.load.non_lagging_force_N, tire.load.contact_patch_normal_N},
                   "tire load state");
    require_finite({tire.output.lateral_force_N, tire.output.pneumatic_trail_m, tire.output.aligning_moment_Nm},
                   "tire output");
  }
}

}  // namespace

VariantTrace simulate_variant(const DrivingLog& log, const ParameterSet& params, const RoadSetup& road,
                              ModelVariant variant) {
  if (log.samples.empty()) throw Error(ErrorCode::EmptyLog, "driving log has no samples");
  for (const auto& cleat : road.cleats) validate_cleat(cleat);

  const auto& vp = params.vehicle;
  const auto& tp = params.tire;
  const double dt = log.dt_s();
  const double half_track = 0.5 * vp.front_track_width_m;
  const bool uses_road = variant == ModelVariant::RR;

  RoadInputs road_inputs;
  road_inputs.slope_mode = road.slope_mode;
  if (uses_road) road_inputs.cleats = road.cleats;

  VariantTrace trace;
  trace.variant = variant;
  trace.samples.reserve(log.samples.size());

  VehicleState state;
  double arclength = 0.0;

  for (std::size_t k = 0; k < log.samples.size(); ++k) {
    const auto& in = log.samples[k];
    EstimateSample out;
    out.time_s = in.time_s;
    out.steering_angle_rad = in.steering_angle_rad;
    out.forward_speed_mps = in.forward_speed_mps;
    out.lateral_slope_rad = in.lateral_slope_rad;
    out.longitudinal_slope_rad = in.longitudinal_slope_rad;
    out.measured_rack_force_N = in.measured_rack_force_N;
    out.arclength_m = arclength;
    out.state = state;

    try {
      if (!(in.forward_speed_mps >= kMinForwardSpeedMps)) {
        if (!trace.samples.empty()) {
          const auto& prev = trace.samples.back();
          out.front_slip_rad = prev.front_slip_rad;
          out.rear_slip_rad = prev.rear_slip_rad;
          out.rear_lateral_force_N = prev.rear_lateral_force_N;
          out.front = prev.front;
          out.rack_force_N = prev.rack_force_N;
        }
        out.degraded = true;
      } else {
        road_inputs.lateral_slope_rad = uses_road ? in.lateral_slope_rad : 0.0;
        road_inputs.longitudinal_slope_rad = uses_road ? in.longitudinal_slope_rad : 0.0;
        const DriverInputs driver{in.steering_angle_rad, in.forward_speed_mps};
        const double slope = road_inputs.active_slope_rad();
        const double front_s = arclength + vp.dist_cg_front_m;

        if (!(std::abs(state.lateral_speed_mps) < in.forward_speed_mps)) ++trace.small_angle_warnings;
        out.front_slip_rad = slip_angle(state, driver, vp, Axle::Front);
        out.rear_slip_rad = slip_angle(state, driver, vp, Axle::Rear);

        const double z_a = static_deflection(vp, tp, slope, Axle::Front);
        const std::array<double, 2> lateral_offsets{half_track, -half_track};
        for (std::size_t side = 0; side < 2; ++side) {
          auto& tire = out.front[side];
          tire.road = effective_profile(front_s, lateral_offsets[side], z_a, road_inputs, tp.cam);
          tire.load = tire_load_state(vp, tp, slope, Axle::Front, tire.road);
          tire.output = tire_output(tp, out.front_slip_rad, tire.load);
        }
        out.rear_lateral_force_N = -tp.rear_cornering_stiffness_Nprad * out.rear_slip_rad;
        out.rack_force_N =
            rack_force(vp, out.front[0].output.aligning_moment_Nm, out.front[1].output.aligning_moment_Nm);
        check_sample(out);

        const AxleForces forces{out.front[0].output.lateral_force_N + out.front[1].output.lateral_force_N,
                                out.rear_lateral_force_N};
        state = step(state, driver, road_inputs, forces, vp, dt);
        require_finite({state.lateral_speed_mps, state.yaw_rate_radps}, "vehicle state");
      }
    } catch (const Error& e) {
      throw e.with_timestep(k);
    }

    arclength += in.forward_speed_mps * dt;
    trace.samples.push_back(std::move(out));
  }
  return trace;
}

SimulationResult simulate(const DrivingLog& log, const ParameterSet& params, const RoadSetup& road,
                          std::span<const ModelVariant> variants) {
  if (log.samples.empty()) throw Error(ErrorCode::EmptyLog, "driving log has no samples");

  SimulationResult result;
  if (variants.size() == 1) {
    result.traces.push_back(simulate_variant(log, params, road, variants.front()));
    return result;
  }
  // Variants share only immutable inputs; collect in request order.
  std::vector<std::future<VariantTrace>> runs;
  runs.reserve(variants.size());
  for (const auto variant : variants) {
    runs.push_back(std::async(std::launch::async,
                              [&log, &params, &road, variant] { return simulate_variant(log, params, road, variant); }));
  }
  for (auto& run : runs) result.traces.push_back(run.get());
  return result;
}

double mean_absolute_error(std::span<const double> estimates, std::span<const double> measurements) {
  if (estimates.size() != measurements.size()) {
    throw Error(ErrorCode::LengthMismatch, "estimate and measurement series differ in length (" +
                                               std::to_string(estimates.size()) + " vs " +
                                               std::to_string(measurements.size()) + ")");
  }
  if (estimates.empty()) throw Error(ErrorCode::EmptySeries, "cannot score an empty series");
  double total = 0.0;
  for (std::size_t i = 0; i < estimates.size(); ++i) total += std::abs(estimates[i] - measurements[i]);
  return total / static_cast<double>(estimates.size());
}

Metrics score(const SimulationResult& result, double settle_s) {
  Metrics metrics;
  metrics.settle_s = settle_s;
  if (result.traces.empty() || result.traces.front().samples.empty()) return metrics;

  const auto& reference = result.traces.front().samples;
  const double t0 = reference.front().time_s;
  std::vector<std::size_t> scored;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    if (!reference[i].measured_rack_force_N) continue;
    if (reference[i].time_s - t0 < settle_s) {
      ++metrics.excluded_samples;
      continue;
    }
    scored.push_back(i);
  }
  metrics.sample_count = scored.size();
  if (scored.empty()) return metrics;

  std::vector<double> measured;
  measured.reserve(scored.size());
  for (auto i : scored) measured.push_back(*reference[i].measured_rack_force_N);

  for (const auto& trace : result.traces) {
    std::vector<double> estimates;
    estimates.reserve(scored.size());
    for (auto i : scored) estimates.push_back(trace.samples[i].rack_force_N);
    metrics.scores.push_back({trace.variant, mean_absolute_error(estimates, measured)});
  }
  return metrics;
}

}  // namespace rackforce
