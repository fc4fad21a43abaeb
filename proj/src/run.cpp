#include "rackforce/run.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "rackforce/config.hpp"
#include "rackforce/log_io.hpp"

namespace rackforce {

namespace {

void join(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) out << ',';
    out << cells[i];
  }
  out << '\n';
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  return out;
}

}  // namespace

std::string estimate_file_name(ModelVariant variant) {
  return "estimates_" + std::string(variant_key(variant)) + ".csv";
}

std::vector<std::string> estimate_csv_columns() {
  std::vector<std::string> columns{
      "t_s",           "delta_rad",     "u_mps",        "rack_N",         "measured_rack_N",
      "theta_lat_rad", "theta_long_rad", "s_m",         "v_mps",          "yaw_rate_radps",
      "alpha_front_rad", "alpha_rear_rad", "Fy_rear_N",
  };
  for (const char* side : {"left", "right"}) {
    for (const char* field : {"w_m", "beta_x_rad", "beta_y_rad", "Fz_N", "z_a_m", "rho_z_m", "Frad_N", "FyN_N",
                              "FcN_N", "Fy_N", "trail_m", "Mz_Nm"}) {
      // w_m -> w_left_m
      std::string name(field);
      name.insert(name.rfind('_'), std::string("_") + side);
      columns.push_back(std::move(name));
    }
  }
  columns.emplace_back("degraded");
  return columns;
}

std::vector<std::string> plot_csv_columns(const std::vector<ModelVariant>& variants) {
  std::vector<std::string> columns{"t_s", "measured_rack_N"};
  for (auto v : variants) columns.push_back("rack_" + std::string(variant_key(v)) + "_N");
  return columns;
}

void write_estimate_csv(std::ostream& out, const VariantTrace& trace) {
  join(out, estimate_csv_columns());
  std::vector<std::string> row;
  for (const auto& s : trace.samples) {
    row.clear();
    for (double v : {s.time_s, s.steering_angle_rad, s.forward_speed_mps, s.rack_force_N}) {
      row.push_back(format_double(v));
    }
    row.push_back(s.measured_rack_force_N ? format_double(*s.measured_rack_force_N) : "");
    for (double v : {s.lateral_slope_rad, s.longitudinal_slope_rad, s.arclength_m, s.state.lateral_speed_mps,
                     s.state.yaw_rate_radps, s.front_slip_rad, s.rear_slip_rad, s.rear_lateral_force_N}) {
      row.push_back(format_double(v));
    }
    for (const auto& tire : s.front) {
      for (double v : {tire.road.effective_height_m, tire.road.effective_lateral_slope_rad,
                       tire.road.effective_longitudinal_slope_rad, tire.load.normal_force_N,
                       tire.load.static_deflection_m, tire.load.radial_deflection_m, tire.load.radial_force_N,
                       tire.load.non_lagging_force_N, tire.load.contact_patch_normal_N, tire.output.lateral_force_N,
                       tire.output.pneumatic_trail_m, tire.output.aligning_moment_Nm}) {
        row.push_back(format_double(v));
      }
    }
    row.emplace_back(s.degraded ? "1" : "0");
    join(out, row);
  }
}

void write_plot_csv(std::ostream& out, const SimulationResult& result) {
  std::vector<ModelVariant> variants;
  for (const auto& t : result.traces) variants.push_back(t.variant);
  join(out, plot_csv_columns(variants));
  if (result.traces.empty()) return;

  const auto& reference = result.traces.front().samples;
  std::vector<std::string> row;
  for (std::size_t i = 0; i < reference.size(); ++i) {
    row.clear();
    row.push_back(format_double(reference[i].time_s));
    const auto& measured = reference[i].measured_rack_force_N;
    row.push_back(measured ? format_double(*measured) : "");
    for (const auto& t : result.traces) row.push_back(format_double(t.samples[i].rack_force_N));
    join(out, row);
  }
}

std::string metrics_json(const Metrics& metrics, const std::vector<ModelVariant>& variants) {
  using json = nlohmann::ordered_json;
  json doc;
  if (metrics.scores.empty()) {
    doc["mae_N"] = nullptr;
  } else {
    json mae = json::object();
    for (const auto& s : metrics.scores) mae[std::string(variant_label(s.variant))] = s.mae_N;
    doc["mae_N"] = mae;
  }
  doc["sample_count"] = metrics.sample_count;
  doc["excluded_samples"] = metrics.excluded_samples;
  doc["settle_s"] = metrics.settle_s;
  json keys = json::array();
  for (auto v : variants) keys.push_back(std::string(variant_key(v)));
  doc["variants"] = keys;
  return doc.dump(2) + "\n";
}

Metrics run(const RunOptions& options, std::ostream* warnings) {
  if (options.variants.empty()) throw Error(ErrorCode::ConfigError, "no model variants requested");
  for (std::size_t i = 0; i < options.variants.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (options.variants[i] == options.variants[j]) {
        throw Error(ErrorCode::ConfigError, "variant " + std::string(variant_key(options.variants[i])) +
                                                " requested twice");
      }
    }
  }
  if (!(options.settle_s >= 0.0)) throw Error(ErrorCode::ConfigError, "settle window must be >= 0 s");

  const auto config = load_config(options.config_path);
  const auto log = ingest(options.log_path, options.slope_path, options.rate_hz);

  RoadSetup road;
  road.slope_mode = config.slope_mode;
  if (options.cleat_path) road.cleats = load_cleats(*options.cleat_path);

  const auto result = simulate(log, config.params, road, options.variants);
  const auto metrics = score(result, options.settle_s);
  if (warnings != nullptr) {
    for (const auto& trace : result.traces) {
      if (trace.small_angle_warnings == 0) continue;
      *warnings << "warning: " << variant_label(trace.variant) << ": " << trace.small_angle_warnings
                << " samples with |v| >= u\n";
    }
  }

  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + options.out_dir.string() + ": " + ec.message());

  // Sequential writes keep the output independent of scheduling.
  for (const auto& trace : result.traces) {
    auto out = open_output(options.out_dir / estimate_file_name(trace.variant));
    write_estimate_csv(out, trace);
  }
  {
    auto out = open_output(options.out_dir / kMetricsFileName);
    out << metrics_json(metrics, options.variants);
  }
  {
    auto out = open_output(options.out_dir / kPlotDataFileName);
    write_plot_csv(out, result);
  }
  return metrics;
}

int run_reporting(const RunOptions& options, std::ostream& err) {
  try {
    run(options, &err);
    return 0;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numeric_failure(e.code()) ? 3 : 2;
  }
}

}  // namespace rackforce
