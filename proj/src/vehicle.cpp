#include "rackforce/vehicle.hpp"

#include <cmath>
#include <string>

namespace rackforce {

namespace {

void require_speed(const DriverInputs& inputs) {
  if (!(inputs.forward_speed_mps >= kMinForwardSpeedMps)) {
    throw Error(ErrorCode::SpeedTooLow,
                "forward_speed_mps must be >= 0.5 (got " + std::to_string(inputs.forward_speed_mps) + ")");
  }
}

}  // namespace

StateDerivative dynamics(const VehicleState& state, const DriverInputs& inputs, const RoadInputs& road,
                         const AxleForces& forces, const VehicleParams& vp) {
  require_speed(inputs);
  double lateral_force = forces.front_lateral_N + forces.rear_lateral_N;
  if (road.slope_mode == SlopeMode::Lateral) {
    lateral_force -= vp.mass_kg * vp.gravity_mps2 * std::sin(road.lateral_slope_rad);
  }
  return {
      lateral_force / vp.mass_kg - inputs.forward_speed_mps * state.yaw_rate_radps,
      (vp.dist_cg_front_m * forces.front_lateral_N - vp.dist_cg_rear_m * forces.rear_lateral_N) /
          vp.yaw_inertia_kgm2,
  };
}

VehicleState step(const VehicleState& state, const DriverInputs& inputs, const RoadInputs& road,
                  const AxleForces& forces, const VehicleParams& vp, double dt_s) {
  if (!(dt_s > 0.0 && dt_s <= kMaxTimeStepS)) {
    throw Error(ErrorCode::InvalidTimeStep, "dt_s must be in (0, 0.02] (got " + std::to_string(dt_s) + ")");
  }
  require_speed(inputs);
  return rk4_step(state, dt_s,
                  [&](const VehicleState& x) { return dynamics(x, inputs, road, forces, vp); });
}

double slip_angle(const VehicleState& state, const DriverInputs& inputs, const VehicleParams& vp, Axle axle) {
  require_speed(inputs);
  const double u = inputs.forward_speed_mps;
  if (axle == Axle::Front) {
    return std::atan((state.lateral_speed_mps + vp.dist_cg_front_m * state.yaw_rate_radps) / u) -
           inputs.steering_angle_rad;
  }
  return std::atan((state.lateral_speed_mps - vp.dist_cg_rear_m * state.yaw_rate_radps) / u);
}

}  // namespace rackforce
