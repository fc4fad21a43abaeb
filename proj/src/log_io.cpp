#include "rackforce/log_io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace rackforce {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string> split(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.emplace_back(trim(line.substr(start, comma == std::string_view::npos ? comma : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(std::string_view text) {
  double value = 0.0;
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void require_increasing(std::span<const double> times, const std::string& source) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) {
      throw Error(ErrorCode::NonMonotonicTime, source + ": t_s must be strictly increasing (row " +
                                                   std::to_string(i + 1) + ", t_s=" + format_double(times[i]) +
                                                   ")");
    }
  }
}

}  // namespace

std::string format_double(double value) {
  if (value == 0.0) return "0";  // folds -0 as well
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

std::vector<double> CsvTable::numeric_column(std::string_view name, bool allow_empty) const {
  const auto index = column(name);
  if (!index) throw Error(ErrorCode::SchemaError, source + ": missing column " + std::string(name));
  std::vector<double> values;
  values.reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& cell = rows[r][*index];
    if (cell.empty() && allow_empty) {
      values.push_back(std::numeric_limits<double>::quiet_NaN());
      continue;
    }
    const auto number = parse_number(cell);
    if (!number || !std::isfinite(*number)) {
      throw Error(ErrorCode::SchemaError, source + ": column " + std::string(name) + " row " +
                                              std::to_string(r + 2) + " is not a finite number ('" + cell + "')");
    }
    values.push_back(*number);
  }
  return values;
}

CsvTable parse_csv(std::string_view text, std::string source) {
  CsvTable table;
  table.source = std::move(source);
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const auto line = trim(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto cells = split(line);
    if (table.header.empty()) {
      for (std::size_t i = 0; i < cells.size(); ++i) {
        if (cells[i].empty()) throw Error(ErrorCode::SchemaError, table.source + ": empty column name in header");
        if (std::find(cells.begin(), cells.begin() + static_cast<std::ptrdiff_t>(i), cells[i]) !=
            cells.begin() + static_cast<std::ptrdiff_t>(i)) {
          throw Error(ErrorCode::SchemaError, table.source + ": duplicate column " + cells[i]);
        }
      }
      table.header = std::move(cells);
    } else {
      if (cells.size() != table.header.size()) {
        throw Error(ErrorCode::SchemaError, table.source + ": line " + std::to_string(line_no) + " has " +
                                                std::to_string(cells.size()) + " cells, header has " +
                                                std::to_string(table.header.size()));
      }
      table.rows.push_back(std::move(cells));
    }
    if (end == text.size()) break;
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) { return parse_csv(read_file(path), path.filename().string()); }

std::vector<double> interpolate_linear(std::span<const double> times, std::span<const double> values,
                                       std::span<const double> query) {
  constexpr double kSnap = 1e-9;
  std::vector<double> out;
  out.reserve(query.size());
  if (times.empty()) return out;

  std::size_t j = 0;
  for (const double q : query) {
    if (q <= times.front()) {
      out.push_back(values.front());
      continue;
    }
    if (q >= times.back()) {
      out.push_back(values.back());
      continue;
    }
    // Queries arrive sorted; advance to the bracketing interval.
    while (j + 1 < times.size() && times[j + 1] <= q) ++j;
    if (std::abs(q - times[j]) <= kSnap) {
      out.push_back(values[j]);
    } else if (std::abs(times[j + 1] - q) <= kSnap) {
      out.push_back(values[j + 1]);
    } else {
      const double frac = (q - times[j]) / (times[j + 1] - times[j]);
      out.push_back(values[j] + (values[j + 1] - values[j]) * frac);
    }
  }
  return out;
}

DrivingLog ingest_tables(const CsvTable& main_log, const CsvTable* slopes, double rate_hz) {
  if (!(rate_hz >= kMinLogRateHz && rate_hz <= kMaxLogRateHz)) {
    throw Error(ErrorCode::RateOutOfRange, "rate must be in [50, 1000] Hz (got " + format_double(rate_hz) + ")");
  }
  if (main_log.header.empty() || main_log.rows.empty()) {
    throw Error(ErrorCode::EmptyLog, main_log.source + ": log has no samples");
  }

  const auto t = main_log.numeric_column("t_s");
  const auto delta = main_log.numeric_column("delta_rad");
  const auto speed = main_log.numeric_column("u_mps");
  require_increasing(t, main_log.source);

  std::optional<std::vector<double>> rack;
  if (main_log.column("rack_N")) rack = main_log.numeric_column("rack_N", true);

  // Uniform time base anchored at the first sample.
  const double dt = 1.0 / rate_hz;
  const double t0 = t.front();
  const auto count = static_cast<std::size_t>(std::floor((t.back() - t0) * rate_hz + 1e-6)) + 1;
  std::vector<double> base(count);
  for (std::size_t k = 0; k < count; ++k) base[k] = t0 + static_cast<double>(k) * dt;

  DrivingLog log;
  log.rate_hz = rate_hz;
  log.samples.resize(count);
  const auto delta_r = interpolate_linear(t, delta, base);
  const auto speed_r = interpolate_linear(t, speed, base);
  for (std::size_t k = 0; k < count; ++k) {
    log.samples[k].time_s = base[k];
    log.samples[k].steering_angle_rad = delta_r[k];
    log.samples[k].forward_speed_mps = speed_r[k];
  }

  if (rack) {
    // Gaps in the measurement stay gaps; interpolate only between present samples.
    std::vector<double> mt;
    std::vector<double> mv;
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (!std::isnan((*rack)[i])) {
        mt.push_back(t[i]);
        mv.push_back((*rack)[i]);
      }
    }
    if (!mt.empty()) {
      const auto rack_r = interpolate_linear(mt, mv, base);
      for (std::size_t k = 0; k < count; ++k) {
        if (base[k] >= mt.front() - 1e-9 && base[k] <= mt.back() + 1e-9) {
          log.samples[k].measured_rack_force_N = rack_r[k];
        }
      }
    }
  }

  if (slopes != nullptr) {
    if (slopes->rows.empty()) throw Error(ErrorCode::SchemaError, slopes->source + ": slope file has no samples");
    const auto st = slopes->numeric_column("t_s");
    const auto lat = slopes->numeric_column("theta_lat_rad");
    const auto lon = slopes->numeric_column("theta_long_rad");
    require_increasing(st, slopes->source);
    const auto lat_r = interpolate_linear(st, lat, base);
    const auto lon_r = interpolate_linear(st, lon, base);
    for (std::size_t k = 0; k < count; ++k) {
      log.samples[k].lateral_slope_rad = lat_r[k];
      log.samples[k].longitudinal_slope_rad = lon_r[k];
    }
  }
  return log;
}

DrivingLog ingest(const std::filesystem::path& log_path, const std::optional<std::filesystem::path>& slope_path,
                  double rate_hz) {
  const auto main_log = read_csv(log_path);
  if (!slope_path) return ingest_tables(main_log, nullptr, rate_hz);
  const auto slopes = read_csv(*slope_path);
  return ingest_tables(main_log, &slopes, rate_hz);
}

std::vector<CleatSpec> cleats_from_table(const CsvTable& table) {
  const auto start = table.numeric_column("start_m");
  const auto length = table.numeric_column("length_m");
  const auto height = table.numeric_column("height_m");
  const auto width = table.numeric_column("width_m");
  const auto yaw = table.numeric_column("yaw_deg");
  for (const auto& name : table.header) {
    if (name != "start_m" && name != "length_m" && name != "height_m" && name != "width_m" && name != "yaw_deg") {
      throw Error(ErrorCode::SchemaError, table.source + ": unexpected column " + name);
    }
  }

  std::vector<CleatSpec> cleats;
  cleats.reserve(start.size());
  for (std::size_t i = 0; i < start.size(); ++i) {
    CleatSpec cleat{start[i], length[i], height[i], width[i], yaw[i] * std::numbers::pi / 180.0};
    try {
      validate_cleat(cleat);
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidCleat, table.source + " row " + std::to_string(i + 2) + ": " + e.what());
    }
    cleats.push_back(cleat);
  }
  return cleats;
}

std::vector<CleatSpec> load_cleats(const std::filesystem::path& path) { return cleats_from_table(read_csv(path)); }

}  // namespace rackforce
