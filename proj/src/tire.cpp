#include "rackforce/tire.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace rackforce {

namespace {

// B*x - E*(B*x - atan(B*x)), the shared Magic-Formula argument.
double magic_argument(double B, double E, double x) {
  const double bx = B * x;
  return bx - E * (bx - std::atan(bx));
}

}  // namespace

double normal_force(const VehicleParams& vp, double slope_rad, Axle axle) {
  if (!(std::abs(slope_rad) < std::numbers::pi / 4.0)) {
    throw Error(ErrorCode::SlopeOutOfRange, "|slope| must be < pi/4 (got " + std::to_string(slope_rad) + ")");
  }
  const double lever = axle == Axle::Front ? vp.dist_cg_rear_m : vp.dist_cg_front_m;
  return vp.mass_kg * vp.gravity_mps2 * lever * std::cos(slope_rad) / (2.0 * vp.wheelbase_m());
}

double static_deflection(const VehicleParams& vp, const TireParams& tp, double slope_rad, Axle axle) {
  return normal_force(vp, slope_rad, axle) / tp.vertical_stiffness_Npm;
}

double radial_deflection(double effective_height_m, double static_deflection_m, double longitudinal_slope_rad) {
  return (effective_height_m - static_deflection_m) * std::cos(longitudinal_slope_rad);
}

double radial_force(const TireParams& tp, double rho, double beta_x) {
  const double force = tp.q_fz1 * (1.0 + tp.q_fz3 * beta_x * beta_x) * rho + tp.q_fz2 * rho * rho;
  return std::max(force, 0.0);
}

double non_lagging_force(const TireParams& tp, double beta_x, double radial_force_N, double normal_force_N) {
  const TireLoads loads{normal_force_N, radial_force_N, 0.0};
  const double B = tp.non_lagging.B(loads);
  const double C = tp.non_lagging.C(loads);
  const double D = tp.non_lagging.D(loads);
  return D * std::sin(C * std::atan(B * beta_x)) * std::cos(beta_x) - radial_force_N * std::sin(beta_x);
}

double contact_patch_normal(double radial_force_N, double non_lagging_force_N, double beta_x) {
  const double force = (radial_force_N + non_lagging_force_N * std::sin(beta_x)) / std::cos(beta_x);
  return std::max(force, 0.0);
}

LateralForceResult lateral_force(const TireParams& tp, double slip_rad, double normal_force_N,
                                 double contact_patch_normal_N) {
  const TireLoads loads{normal_force_N, 0.0, contact_patch_normal_N};
  const auto& mf = tp.lateral;
  const double tan_alpha = std::tan(slip_rad);

  LateralForceResult result;
  result.slip.alpha_y = mf.SH(loads) + tan_alpha;
  result.slip.alpha_t = tp.trail.SH(loads) + tan_alpha;
  result.slip.alpha_r = tan_alpha;

  const double arg = magic_argument(mf.B(loads), mf.E(loads), result.slip.alpha_y);
  result.lateral_force_N = mf.D(loads) * std::sin(mf.C(loads) * std::atan(arg)) + mf.SV(loads);
  return result;
}

AligningMomentResult aligning_moment(const TireParams& tp, double lateral_force_N, double alpha_t,
                                     double alpha_r, double normal_force_N, double contact_patch_normal_N) {
  const TireLoads loads{normal_force_N, 0.0, contact_patch_normal_N};
  const auto& trail = tp.trail;
  const double arg = magic_argument(trail.B(loads), trail.E(loads), alpha_t);
  const double t = trail.D(loads) * std::cos(trail.C(loads) * std::atan(arg));
  const double residual = tp.residual.D(loads) * std::cos(std::atan(tp.residual.B(loads) * alpha_r));
  return {-t * lateral_force_N + residual, t};
}

double rack_force(const VehicleParams& vp, double mz_left, double mz_right) {
  return vp.moment_to_rack_ratio_per_m * (mz_left + mz_right);
}

TireLoadState tire_load_state(const VehicleParams& vp, const TireParams& tp, double slope_rad, Axle axle,
                              const EffectiveRoadPoint& road) {
  TireLoadState s;
  s.normal_force_N = normal_force(vp, slope_rad, axle);
  s.static_deflection_m = s.normal_force_N / tp.vertical_stiffness_Npm;
  s.radial_deflection_m = radial_deflection(road.effective_height_m, s.static_deflection_m,
                                            road.effective_longitudinal_slope_rad);
  s.radial_force_N = radial_force(tp, s.radial_deflection_m, road.effective_lateral_slope_rad);
  s.non_lagging_force_N =
      non_lagging_force(tp, road.effective_lateral_slope_rad, s.radial_force_N, s.normal_force_N);
  s.contact_patch_normal_N =
      contact_patch_normal(s.radial_force_N, s.non_lagging_force_N, road.effective_lateral_slope_rad);
  return s;
}

TireOutput tire_output(const TireParams& tp, double slip_rad, const TireLoadState& load) {
  const auto fy = lateral_force(tp, slip_rad, load.normal_force_N, load.contact_patch_normal_N);
  const auto mz = aligning_moment(tp, fy.lateral_force_N, fy.slip.alpha_t, fy.slip.alpha_r, load.normal_force_N,
                                  load.contact_patch_normal_N);
  return {fy.lateral_force_N, mz.pneumatic_trail_m, mz.aligning_moment_Nm};
}

}  // namespace rackforce
