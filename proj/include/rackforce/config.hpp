#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "rackforce/core.hpp"

namespace rackforce {

// Everything a run needs besides the logs. Loaded from a JSON document:
//
//   {
//     "vehicle": { "mass_kg": 1800, ... },
//     "tire": {
//       "vertical_stiffness_Npm": 200000, "q_fz1": ..., "q_fz2": ..., "q_fz3": ...,
//       "rear_cornering_stiffness_Nprad": ...,
//       "lateral":     { "B": <coef>, "C": ..., "D": ..., "E": ..., "SH": ..., "SV": ... },
//       "trail":       { "B": ..., "C": ..., "D": ..., "E": ..., "SH": ... },
//       "residual":    { "B": ..., "D": ... },
//       "non_lagging": { "B": ..., "C": ..., "D": ... },
//       "cam": { "half_length_m": ..., "half_height_m": ..., "spacing_m": ...,
//                "track_half_width_m": ..., "exponent": ... }
//     },
//     "road": { "slope_mode": "lateral" | "longitudinal" }
//   }
//
// A <coef> is either a number (constant) or
// { "load": "normal" | "radial" | "contact_patch" | "combined", "p": [p0, p1, p2] }.
// Omitted keys keep their defaults; unknown keys are errors.
struct RunConfig {
  ParameterSet params;
  SlopeMode slope_mode = SlopeMode::Lateral;
};

// Throws ConfigError for malformed documents and the validate_params error for
// out-of-range values.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

// Full document with every key spelled out.
std::string dump_config(const RunConfig& config);

}  // namespace rackforce
