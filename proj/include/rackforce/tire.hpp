#pragma once

#include "rackforce/core.hpp"
#include "rackforce/road.hpp"

namespace rackforce {

struct TireLoadState {
  double normal_force_N = 0.0;           // F_z
  double static_deflection_m = 0.0;      // z_a
  double radial_deflection_m = 0.0;      // rho_z
  double radial_force_N = 0.0;           // F_z^rad
  double non_lagging_force_N = 0.0;      // F_yN
  double contact_patch_normal_N = 0.0;   // F_cN

  TireLoads loads() const { return {normal_force_N, radial_force_N, contact_patch_normal_N}; }
};

struct LateralSlip {
  double alpha_y = 0.0;
  double alpha_t = 0.0;
  double alpha_r = 0.0;
};

struct LateralForceResult {
  double lateral_force_N = 0.0;
  LateralSlip slip;
};

struct AligningMomentResult {
  double aligning_moment_Nm = 0.0;
  double pneumatic_trail_m = 0.0;
};

struct TireOutput {
  double lateral_force_N = 0.0;     // F_y
  double pneumatic_trail_m = 0.0;   // t
  double aligning_moment_Nm = 0.0;  // M_z
};

// Per-tire vertical load from a static force balance on a slope; |slope| < pi/4.
double normal_force(const VehicleParams& vp, double slope_rad, Axle axle);

// Flat-road vertical deflection under the static load.
double static_deflection(const VehicleParams& vp, const TireParams& tp, double slope_rad, Axle axle);

double radial_deflection(double effective_height_m, double static_deflection_m, double longitudinal_slope_rad);

// Semi-empirical radial force, clamped at zero when the tire loses contact.
double radial_force(const TireParams& tp, double radial_deflection_m, double lateral_slope_rad);

// Side force from asymmetric sidewall deformation on a cambered contact.
double non_lagging_force(const TireParams& tp, double lateral_slope_rad, double radial_force_N,
                         double normal_force_N);

// Force normal to the contact patch, clamped at zero.
double contact_patch_normal(double radial_force_N, double non_lagging_force_N, double lateral_slope_rad);

// Magic-Formula lateral force. Coefficients are evaluated at (F_z, F_cN); F_z^rad
// is not used by the lateral tables.
LateralForceResult lateral_force(const TireParams& tp, double slip_rad, double normal_force_N,
                                 double contact_patch_normal_N);

AligningMomentResult aligning_moment(const TireParams& tp, double lateral_force_N, double alpha_t,
                                     double alpha_r, double normal_force_N, double contact_patch_normal_N);

double rack_force(const VehicleParams& vp, double aligning_moment_left_Nm, double aligning_moment_right_Nm);

// Runs normal load through contact-patch normal force for one tire.
TireLoadState tire_load_state(const VehicleParams& vp, const TireParams& tp, double slope_rad, Axle axle,
                              const EffectiveRoadPoint& road);

// Lateral force, trail and aligning moment for one tire.
TireOutput tire_output(const TireParams& tp, double slip_rad, const TireLoadState& load);

}  // namespace rackforce
