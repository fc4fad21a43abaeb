#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace rackforce {

// Error categories. The CLI prints the category name verbatim, so these are
// part of the external interface.
enum class ErrorCode : std::uint8_t {
  NonPositiveMass,
  NonPositiveInertia,
  NonPositiveLength,
  ZeroTransmissionRatio,
  GravityOutOfRange,
  NonPositiveStiffness,
  CoefficientRangeError,
  NonFiniteCoefficient,
  InvalidLoadBasis,
  InvalidCamGeometry,
  InvalidCleat,
  SlopeOutOfRange,
  SpeedTooLow,
  InvalidTimeStep,
  EmptyLog,
  EmptySeries,
  LengthMismatch,
  SchemaError,
  NonMonotonicTime,
  RateOutOfRange,
  ConfigError,
  IoError,
  NonFinite,
};

std::string_view to_string(ErrorCode code);

// Input errors map to CLI exit code 2, numeric failures to 3.
bool is_numeric_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

  // Timestep at which a simulation failed, when known.
  std::optional<std::size_t> timestep() const noexcept { return timestep_; }

  Error with_timestep(std::size_t index) const;

 private:
  ErrorCode code_;
  std::optional<std::size_t> timestep_;
};

}  // namespace rackforce
