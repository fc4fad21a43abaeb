#pragma once

// Domain types shared by every module. All quantities are SI: m, kg, s, N, rad.

#include <cstdint>
#include <vector>

#include "rackforce/error.hpp"

namespace rackforce {

enum class Axle : std::uint8_t { Front, Rear };

// Selects which vehicle equations of motion apply: lateral slope carries a
// gravity term in the lateral balance, longitudinal slope does not.
enum class SlopeMode : std::uint8_t { Lateral, Longitudinal };

struct VehicleParams {
  double mass_kg = 1800.0;
  double yaw_inertia_kgm2 = 3000.0;
  double dist_cg_front_m = 1.4;
  double dist_cg_rear_m = 1.6;
  // Tire aligning moment to rack force transmission ratio (1/m).
  double moment_to_rack_ratio_per_m = 7.0;
  double gravity_mps2 = 9.81;
  // Lateral distance between the two front tire centers.
  double front_track_width_m = 1.6;

  double wheelbase_m() const { return dist_cg_front_m + dist_cg_rear_m; }

  bool operator==(const VehicleParams&) const = default;
};

// Which load a Magic-Formula factor is a function of.
enum class LoadBasis : std::uint8_t {
  Normal,        // F_z, flat-road per-tire load
  Radial,        // F_z^rad
  ContactPatch,  // F_cN
  Combined,      // F_z + F_cN
};

struct TireLoads {
  double normal_N = 0.0;
  double radial_N = 0.0;
  double contact_patch_N = 0.0;

  double select(LoadBasis basis) const;
};

// factor = p0 + p1*F + p2*F^2 with F picked by `basis`.
struct LoadPolynomial {
  LoadBasis basis = LoadBasis::Normal;
  double p0 = 0.0;
  double p1 = 0.0;
  double p2 = 0.0;

  static LoadPolynomial constant(double value) { return {LoadBasis::Normal, value, 0.0, 0.0}; }

  double operator()(double load) const { return p0 + load * (p1 + load * p2); }
  double operator()(const TireLoads& loads) const { return (*this)(loads.select(basis)); }

  bool operator==(const LoadPolynomial&) const = default;
};

struct LateralCoefficients {
  LoadPolynomial B;
  LoadPolynomial C;
  LoadPolynomial D;
  LoadPolynomial E;
  LoadPolynomial SH;
  LoadPolynomial SV;

  bool operator==(const LateralCoefficients&) const = default;
};

struct TrailCoefficients {
  LoadPolynomial B;
  LoadPolynomial C;
  LoadPolynomial D;
  LoadPolynomial E;
  LoadPolynomial SH;

  bool operator==(const TrailCoefficients&) const = default;
};

struct ResidualCoefficients {
  LoadPolynomial B;
  LoadPolynomial D;

  bool operator==(const ResidualCoefficients&) const = default;
};

// Evaluated before F_cN exists, so only Normal and Radial bases are legal.
struct NonLaggingCoefficients {
  LoadPolynomial B;
  LoadPolynomial C;
  LoadPolynomial D;

  bool operator==(const NonLaggingCoefficients&) const = default;
};

// Tandem elliptical cam follower used for obstacle enveloping. Each front tire
// is sampled on two lateral tracks at +/- track_half_width_m.
struct CamGeometry {
  double half_length_m = 0.15;
  double half_height_m = 0.05;
  double spacing_m = 0.10;
  double track_half_width_m = 0.10;
  // Superellipse exponent of the lower boundary; 2 is an ellipse.
  double exponent = 2.0;

  bool operator==(const CamGeometry&) const = default;
};

// Defaults are a plausible passenger-car set, not measured data.
struct TireParams {
  double vertical_stiffness_Npm = 200000.0;
  double q_fz1 = 200000.0;
  double q_fz2 = 1.0e6;
  double q_fz3 = 0.5;
  // Linear cornering stiffness of the whole rear axle (N/rad).
  double rear_cornering_stiffness_Nprad = 140000.0;

  LateralCoefficients lateral{
      .B = LoadPolynomial::constant(11.0),
      .C = LoadPolynomial::constant(1.3),
      .D = {LoadBasis::Combined, 0.0, -0.95, 0.0},
      .E = LoadPolynomial::constant(-1.0),
      .SH = LoadPolynomial::constant(0.0),
      .SV = LoadPolynomial::constant(0.0),
  };
  TrailCoefficients trail{
      .B = LoadPolynomial::constant(10.0),
      .C = LoadPolynomial::constant(1.2),
      .D = {LoadBasis::Combined, 0.02, 2.0e-6, 0.0},
      .E = LoadPolynomial::constant(-1.5),
      .SH = LoadPolynomial::constant(0.0),
  };
  // D_r stays zero so straight driving on a flat road gives zero rack force.
  ResidualCoefficients residual{
      .B = LoadPolynomial::constant(8.0),
      .D = LoadPolynomial::constant(0.0),
  };
  NonLaggingCoefficients non_lagging{
      .B = LoadPolynomial::constant(8.0),
      .C = LoadPolynomial::constant(1.2),
      .D = {LoadBasis::Normal, 0.0, 0.3, 0.0},
  };
  CamGeometry cam;

  bool operator==(const TireParams&) const = default;
};

struct VehicleState {
  double lateral_speed_mps = 0.0;
  double yaw_rate_radps = 0.0;

  bool operator==(const VehicleState&) const = default;
};

struct DriverInputs {
  double steering_angle_rad = 0.0;
  double forward_speed_mps = 0.0;
};

// Plan-view rectangle on the road. Potholes are negative heights.
struct CleatSpec {
  // Arclength of the leading edge where it crosses the track centerline.
  double start_position_m = 0.0;
  double length_m = 0.04;
  double height_m = 0.01;
  double width_m = 4.0;
  // Obliqueness relative to the track normal.
  double yaw_angle_rad = 0.0;

  bool operator==(const CleatSpec&) const = default;
};

struct RoadInputs {
  double lateral_slope_rad = 0.0;
  double longitudinal_slope_rad = 0.0;
  std::vector<CleatSpec> cleats;
  SlopeMode slope_mode = SlopeMode::Lateral;

  // Slope that enters the vertical force balance for the active mode.
  double active_slope_rad() const {
    return slope_mode == SlopeMode::Lateral ? lateral_slope_rad : longitudinal_slope_rad;
  }
};

struct ParameterSet {
  VehicleParams vehicle;
  TireParams tire;

  bool operator==(const ParameterSet&) const = default;
};

// Minimum forward speed accepted by the slip-angle and dynamics equations.
inline constexpr double kMinForwardSpeedMps = 0.5;

// Throws Error naming the first violated invariant.
ParameterSet validate_params(const VehicleParams& vehicle, const TireParams& tire);

// Static per-tire load on the front axle on level ground.
double static_front_tire_load(const VehicleParams& vehicle);

}  // namespace rackforce
