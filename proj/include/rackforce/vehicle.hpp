#pragma once

#include "rackforce/core.hpp"

namespace rackforce {

struct AxleForces {
  double front_lateral_N = 0.0;
  double rear_lateral_N = 0.0;
};

struct StateDerivative {
  double lateral_accel_mps2 = 0.0;
  double yaw_accel_radps2 = 0.0;
};

inline constexpr double kMaxTimeStepS = 0.02;

// Two-degree-of-freedom lateral/yaw dynamics. In Lateral slope mode gravity
// pulls the vehicle down the bank; in Longitudinal mode the slope only enters
// through the tire loads.
StateDerivative dynamics(const VehicleState& state, const DriverInputs& inputs, const RoadInputs& road,
                         const AxleForces& forces, const VehicleParams& vp);

// Classical fourth-order Runge-Kutta step of `derivative(state)`.
template <class Derivative>
VehicleState rk4_step(const VehicleState& x, double dt, Derivative&& derivative) {
  const auto add = [](const VehicleState& s, const StateDerivative& d, double h) {
    return VehicleState{s.lateral_speed_mps + h * d.lateral_accel_mps2,
                        s.yaw_rate_radps + h * d.yaw_accel_radps2};
  };
  const StateDerivative k1 = derivative(x);
  const StateDerivative k2 = derivative(add(x, k1, 0.5 * dt));
  const StateDerivative k3 = derivative(add(x, k2, 0.5 * dt));
  const StateDerivative k4 = derivative(add(x, k3, dt));
  const double w = dt / 6.0;
  return VehicleState{
      x.lateral_speed_mps + w * (k1.lateral_accel_mps2 + 2.0 * k2.lateral_accel_mps2 +
                                 2.0 * k3.lateral_accel_mps2 + k4.lateral_accel_mps2),
      x.yaw_rate_radps +
          w * (k1.yaw_accel_radps2 + 2.0 * k2.yaw_accel_radps2 + 2.0 * k3.yaw_accel_radps2 + k4.yaw_accel_radps2),
  };
}

// Advances one step with inputs and tire forces held constant; 0 < dt_s <= 0.02.
VehicleState step(const VehicleState& state, const DriverInputs& inputs, const RoadInputs& road,
                  const AxleForces& forces, const VehicleParams& vp, double dt_s);

// Axle slip angle. The front includes the steering angle, the rear uses the
// rear-axle lateral velocity.
double slip_angle(const VehicleState& state, const DriverInputs& inputs, const VehicleParams& vp, Axle axle);

}  // namespace rackforce
