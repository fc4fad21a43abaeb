#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rackforce/estimator.hpp"

namespace rackforce {

// Comma separated text with a required header row. Cells are kept as text and
// converted per column on demand.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::string source;  // file name for error messages

  // Index of `name`, or nullopt.
  std::optional<std::size_t> column(std::string_view name) const;
  // Numeric column; throws SchemaError naming the column when missing or
  // unparsable. Empty cells are rejected unless `allow_empty`, in which case
  // they come back as NaN.
  std::vector<double> numeric_column(std::string_view name, bool allow_empty = false) const;
};

CsvTable parse_csv(std::string_view text, std::string source = "<memory>");
CsvTable read_csv(const std::filesystem::path& path);

inline constexpr double kMinLogRateHz = 50.0;
inline constexpr double kMaxLogRateHz = 1000.0;

// Linear interpolation of (times, values) at `query`. Queries outside the
// source range hold the end values; queries within 1e-9 s of a source sample
// return that sample unchanged.
std::vector<double> interpolate_linear(std::span<const double> times, std::span<const double> values,
                                       std::span<const double> query);

// Main log columns: t_s, delta_rad, u_mps and optional rack_N. Slope columns:
// t_s, theta_lat_rad, theta_long_rad. Every channel is resampled onto a
// uniform time base at `rate_hz` starting at the first main-log timestamp.
// Columns outside the schema are ignored so estimate files can be replayed.
DrivingLog ingest_tables(const CsvTable& main_log, const CsvTable* slopes, double rate_hz);
DrivingLog ingest(const std::filesystem::path& log_path, const std::optional<std::filesystem::path>& slope_path,
                  double rate_hz = 250.0);

// Cleat map: start_m, length_m, height_m, width_m, yaw_deg.
std::vector<CleatSpec> cleats_from_table(const CsvTable& table);
std::vector<CleatSpec> load_cleats(const std::filesystem::path& path);

// Shortest text that parses back to the same double.
std::string format_double(double value);

}  // namespace rackforce
