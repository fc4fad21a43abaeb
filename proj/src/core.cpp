#include "rackforce/core.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace rackforce {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPositiveMass: return "NonPositiveMass";
    case ErrorCode::NonPositiveInertia: return "NonPositiveInertia";
    case ErrorCode::NonPositiveLength: return "NonPositiveLength";
    case ErrorCode::ZeroTransmissionRatio: return "ZeroTransmissionRatio";
    case ErrorCode::GravityOutOfRange: return "GravityOutOfRange";
    case ErrorCode::NonPositiveStiffness: return "NonPositiveStiffness";
    case ErrorCode::CoefficientRangeError: return "CoefficientRangeError";
    case ErrorCode::NonFiniteCoefficient: return "NonFiniteCoefficient";
    case ErrorCode::InvalidLoadBasis: return "InvalidLoadBasis";
    case ErrorCode::InvalidCamGeometry: return "InvalidCamGeometry";
    case ErrorCode::InvalidCleat: return "InvalidCleat";
    case ErrorCode::SlopeOutOfRange: return "SlopeOutOfRange";
    case ErrorCode::SpeedTooLow: return "SpeedTooLow";
    case ErrorCode::InvalidTimeStep: return "InvalidTimeStep";
    case ErrorCode::EmptyLog: return "EmptyLog";
    case ErrorCode::EmptySeries: return "EmptySeries";
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorCode::RateOutOfRange: return "RateOutOfRange";
    case ErrorCode::ConfigError: return "ConfigError";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::NonFinite: return "NonFinite";
  }
  return "Unknown";
}

bool is_numeric_failure(ErrorCode code) { return code == ErrorCode::NonFinite; }

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

Error Error::with_timestep(std::size_t index) const {
  std::string message = what();
  // Strip the "<Category>: " prefix added by the constructor.
  const auto prefix = std::string(to_string(code_)) + ": ";
  if (message.starts_with(prefix)) message.erase(0, prefix.size());
  Error tagged(code_, message + " (timestep " + std::to_string(index) + ")");
  tagged.timestep_ = index;
  return tagged;
}

double TireLoads::select(LoadBasis basis) const {
  switch (basis) {
    case LoadBasis::Normal: return normal_N;
    case LoadBasis::Radial: return radial_N;
    case LoadBasis::ContactPatch: return contact_patch_N;
    case LoadBasis::Combined: return normal_N + contact_patch_N;
  }
  return normal_N;
}

double static_front_tire_load(const VehicleParams& vp) {
  return vp.mass_kg * vp.gravity_mps2 * vp.dist_cg_rear_m / (2.0 * vp.wheelbase_m());
}

namespace {

void require_positive(double value, ErrorCode code, const char* field) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(code, std::string(field) + " must be > 0 (got " + std::to_string(value) + ")");
  }
}

// Extremes of a quadratic polynomial over [lo, hi].
std::pair<double, double> polynomial_range(const LoadPolynomial& poly, double lo, double hi) {
  std::array<double, 3> candidates{poly(lo), poly(hi), poly(lo)};
  if (poly.p2 != 0.0) {
    const double vertex = -poly.p1 / (2.0 * poly.p2);
    if (vertex > lo && vertex < hi) candidates[2] = poly(vertex);
  }
  const auto [mn, mx] = std::minmax_element(candidates.begin(), candidates.end());
  return {*mn, *mx};
}

void check_table_entry(const LoadPolynomial& poly, const std::string& name, double max_load) {
  if (!std::isfinite(poly.p0) || !std::isfinite(poly.p1) || !std::isfinite(poly.p2)) {
    throw Error(ErrorCode::NonFiniteCoefficient, name + " has a non-finite coefficient");
  }
  const auto [lo, hi] = polynomial_range(poly, 0.0, max_load);
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw Error(ErrorCode::NonFiniteCoefficient,
                name + " is not finite for loads in [0, " + std::to_string(max_load) + "] N");
  }
}

void check_shape_factor(const LoadPolynomial& poly, const std::string& name, double max_load) {
  const auto [lo, hi] = polynomial_range(poly, 0.0, max_load);
  if (!(lo > 0.0) || !(hi < 3.0)) {
    throw Error(ErrorCode::CoefficientRangeError,
                name + " must stay within (0, 3) for loads in [0, " + std::to_string(max_load) +
                    "] N (range [" + std::to_string(lo) + ", " + std::to_string(hi) + "])");
  }
}

}  // namespace

ParameterSet validate_params(const VehicleParams& vp, const TireParams& tp) {
  require_positive(vp.mass_kg, ErrorCode::NonPositiveMass, "mass_kg");
  require_positive(vp.yaw_inertia_kgm2, ErrorCode::NonPositiveInertia, "yaw_inertia_kgm2");
  require_positive(vp.dist_cg_front_m, ErrorCode::NonPositiveLength, "dist_cg_front_m");
  require_positive(vp.dist_cg_rear_m, ErrorCode::NonPositiveLength, "dist_cg_rear_m");
  require_positive(vp.front_track_width_m, ErrorCode::NonPositiveLength, "front_track_width_m");
  if (vp.moment_to_rack_ratio_per_m == 0.0 || !std::isfinite(vp.moment_to_rack_ratio_per_m)) {
    throw Error(ErrorCode::ZeroTransmissionRatio, "moment_to_rack_ratio_per_m must be nonzero and finite");
  }
  if (!(vp.gravity_mps2 >= 9.0 && vp.gravity_mps2 <= 10.0)) {
    throw Error(ErrorCode::GravityOutOfRange,
                "gravity_mps2 must be in [9.0, 10.0] (got " + std::to_string(vp.gravity_mps2) + ")");
  }

  require_positive(tp.vertical_stiffness_Npm, ErrorCode::NonPositiveStiffness, "vertical_stiffness_Npm");
  if (!(tp.q_fz1 >= 0.0) || !std::isfinite(tp.q_fz1)) {
    throw Error(ErrorCode::NonPositiveStiffness, "q_fz1 must be >= 0");
  }
  if (!std::isfinite(tp.q_fz2) || !std::isfinite(tp.q_fz3)) {
    throw Error(ErrorCode::NonFiniteCoefficient, "q_fz2 and q_fz3 must be finite");
  }
  require_positive(tp.rear_cornering_stiffness_Nprad, ErrorCode::NonPositiveStiffness,
                   "rear_cornering_stiffness_Nprad");

  const double axle_front = vp.mass_kg * vp.gravity_mps2 * vp.dist_cg_rear_m / vp.wheelbase_m();
  const double axle_rear = vp.mass_kg * vp.gravity_mps2 * vp.dist_cg_front_m / vp.wheelbase_m();
  const double max_load = 2.0 * std::max(axle_front, axle_rear);

  const std::array<std::pair<const LoadPolynomial*, const char*>, 16> table{{
      {&tp.lateral.B, "lateral.B"},
      {&tp.lateral.C, "lateral.C"},
      {&tp.lateral.D, "lateral.D"},
      {&tp.lateral.E, "lateral.E"},
      {&tp.lateral.SH, "lateral.SH"},
      {&tp.lateral.SV, "lateral.SV"},
      {&tp.trail.B, "trail.B"},
      {&tp.trail.C, "trail.C"},
      {&tp.trail.D, "trail.D"},
      {&tp.trail.E, "trail.E"},
      {&tp.trail.SH, "trail.SH"},
      {&tp.residual.B, "residual.B"},
      {&tp.residual.D, "residual.D"},
      {&tp.non_lagging.B, "non_lagging.B"},
      {&tp.non_lagging.C, "non_lagging.C"},
      {&tp.non_lagging.D, "non_lagging.D"},
  }};
  for (const auto& [poly, name] : table) check_table_entry(*poly, name, max_load);

  for (const auto* poly : {&tp.non_lagging.B, &tp.non_lagging.C, &tp.non_lagging.D}) {
    if (poly->basis == LoadBasis::ContactPatch || poly->basis == LoadBasis::Combined) {
      throw Error(ErrorCode::InvalidLoadBasis,
                  "non_lagging coefficients may depend only on the normal or radial load");
    }
  }

  check_shape_factor(tp.lateral.C, "lateral.C", max_load);
  check_shape_factor(tp.trail.C, "trail.C", max_load);

  const auto& cam = tp.cam;
  const auto cam_positive = [](double value, const char* field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      throw Error(ErrorCode::InvalidCamGeometry, std::string("cam.") + field + " must be > 0");
    }
  };
  cam_positive(cam.half_length_m, "half_length_m");
  cam_positive(cam.half_height_m, "half_height_m");
  cam_positive(cam.spacing_m, "spacing_m");
  cam_positive(cam.track_half_width_m, "track_half_width_m");
  if (!(cam.exponent >= 1.0) || !std::isfinite(cam.exponent)) {
    throw Error(ErrorCode::InvalidCamGeometry, "cam.exponent must be >= 1");
  }

  return ParameterSet{vp, tp};
}

}  // namespace rackforce
