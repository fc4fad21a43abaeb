#include <optional>
#include <string>
#include <vector>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "rackforce/config.hpp"
#include "rackforce/estimator.hpp"
#include "rackforce/run.hpp"
#include "rackforce/tire.hpp"
#include "rackforce/vehicle.hpp"

namespace py = pybind11;
using namespace rackforce;

namespace {

// Accepts JSON text, a dict, or None (defaults).
RunConfig to_config(const py::object& config) {
  if (config.is_none()) return RunConfig{};
  if (py::isinstance<py::str>(config)) return parse_config(config.cast<std::string>());
  const auto text = py::module_::import("json").attr("dumps")(config).cast<std::string>();
  return parse_config(text);
}

CleatSpec to_cleat(const py::dict& d) {
  CleatSpec c;
  c.start_position_m = d["start_m"].cast<double>();
  if (d.contains("length_m")) c.length_m = d["length_m"].cast<double>();
  if (d.contains("height_m")) c.height_m = d["height_m"].cast<double>();
  if (d.contains("width_m")) c.width_m = d["width_m"].cast<double>();
  if (d.contains("yaw_rad")) c.yaw_angle_rad = d["yaw_rad"].cast<double>();
  return c;
}

std::vector<CleatSpec> to_cleats(const std::optional<std::vector<py::dict>>& cleats) {
  std::vector<CleatSpec> out;
  if (cleats) {
    for (const auto& d : *cleats) out.push_back(to_cleat(d));
  }
  return out;
}

void require_length(const std::optional<std::vector<double>>& series, std::size_t n, const char* name) {
  if (series && series->size() != n) {
    throw Error(ErrorCode::LengthMismatch, std::string(name) + " has " + std::to_string(series->size()) +
                                               " samples, t_s has " + std::to_string(n));
  }
}

py::dict simulate_py(const std::vector<double>& t_s, const std::vector<double>& delta_rad,
                     const std::vector<double>& u_mps, const std::optional<std::vector<double>>& theta_lat_rad,
                     const std::optional<std::vector<double>>& theta_long_rad,
                     const std::optional<std::vector<double>>& measured_rack_N,
                     const std::optional<std::vector<py::dict>>& cleats, const std::vector<std::string>& variants,
                     const py::object& config, double rate_hz, double settle_s) {
  const std::size_t n = t_s.size();
  require_length(delta_rad, n, "delta_rad");
  require_length(u_mps, n, "u_mps");
  require_length(theta_lat_rad, n, "theta_lat_rad");
  require_length(theta_long_rad, n, "theta_long_rad");
  require_length(measured_rack_N, n, "measured_rack_N");

  DrivingLog log;
  log.rate_hz = rate_hz;
  log.samples.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& s = log.samples[k];
    s.time_s = t_s[k];
    s.steering_angle_rad = delta_rad[k];
    s.forward_speed_mps = u_mps[k];
    if (theta_lat_rad) s.lateral_slope_rad = (*theta_lat_rad)[k];
    if (theta_long_rad) s.longitudinal_slope_rad = (*theta_long_rad)[k];
    if (measured_rack_N) s.measured_rack_force_N = (*measured_rack_N)[k];
  }

  std::vector<ModelVariant> wanted;
  for (const auto& key : variants) {
    const auto v = parse_variant_key(key);
    if (!v) throw Error(ErrorCode::ConfigError, "unknown variant '" + key + "' (expected rr or fr)");
    wanted.push_back(*v);
  }

  const auto cfg = to_config(config);
  RoadSetup road;
  road.slope_mode = cfg.slope_mode;
  road.cleats = to_cleats(cleats);

  SimulationResult result;
  {
    py::gil_scoped_release release;
    result = simulate(log, cfg.params, road, wanted);
  }

  py::dict out;
  py::dict rack;
  py::dict degraded;
  for (const auto& trace : result.traces) {
    const auto key = std::string(variant_key(trace.variant));
    rack[py::str(key)] = trace.rack_forces();
    std::vector<bool> flags;
    for (const auto& s : trace.samples) flags.push_back(s.degraded);
    degraded[py::str(key)] = flags;
  }
  out["rack_N"] = rack;
  out["degraded"] = degraded;
  const auto metrics = score(result, settle_s);
  if (metrics.scores.empty()) {
    out["mae_N"] = py::none();
  } else {
    py::dict mae;
    for (const auto& s : metrics.scores) mae[py::str(std::string(variant_label(s.variant)))] = s.mae_N;
    out["mae_N"] = mae;
  }
  out["sample_count"] = metrics.sample_count;
  return out;
}

}  // namespace

PYBIND11_MODULE(_rackforce, m) {
  m.doc() = "Rack force estimation with a 2DOF vehicle model and a rigid-ring tire chain";
  m.attr("__version__") = "0.1.0";

  py::register_exception<Error>(m, "Error", PyExc_ValueError);

  py::enum_<ModelVariant>(m, "ModelVariant")
      .value("RR", ModelVariant::RR)
      .value("FlatRoad2DOF", ModelVariant::FlatRoad2DOF);
  py::enum_<SlopeMode>(m, "SlopeMode")
      .value("Lateral", SlopeMode::Lateral)
      .value("Longitudinal", SlopeMode::Longitudinal);
  py::enum_<Axle>(m, "Axle").value("Front", Axle::Front).value("Rear", Axle::Rear);

  m.def("default_config", [] { return dump_config(RunConfig{}); }, "Full default configuration as JSON text.");
  m.def(
      "validate_config", [](const py::object& config) { return dump_config(to_config(config)); },
      py::arg("config"), "Validate a configuration and return it with every key filled in.");

  m.def(
      "normal_force",
      [](double slope_rad, Axle axle, const py::object& config) {
        return normal_force(to_config(config).params.vehicle, slope_rad, axle);
      },
      py::arg("slope_rad"), py::arg("axle") = Axle::Front, py::arg("config") = py::none());
  m.def(
      "static_deflection",
      [](double slope_rad, Axle axle, const py::object& config) {
        const auto cfg = to_config(config);
        return static_deflection(cfg.params.vehicle, cfg.params.tire, slope_rad, axle);
      },
      py::arg("slope_rad"), py::arg("axle") = Axle::Front, py::arg("config") = py::none());

  m.def(
      "effective_profile",
      [](double s_m, double y_m, double static_deflection_m, const std::optional<std::vector<py::dict>>& cleats,
         double lateral_slope_rad, double longitudinal_slope_rad, const py::object& config) {
        const auto cfg = to_config(config);
        RoadInputs road;
        road.slope_mode = cfg.slope_mode;
        road.lateral_slope_rad = lateral_slope_rad;
        road.longitudinal_slope_rad = longitudinal_slope_rad;
        road.cleats = to_cleats(cleats);
        const auto p = effective_profile(s_m, y_m, static_deflection_m, road, cfg.params.tire.cam);
        return py::make_tuple(p.effective_height_m, p.effective_lateral_slope_rad,
                              p.effective_longitudinal_slope_rad);
      },
      py::arg("s_m"), py::arg("y_m"), py::arg("static_deflection_m"), py::arg("cleats") = py::none(),
      py::arg("lateral_slope_rad") = 0.0, py::arg("longitudinal_slope_rad") = 0.0, py::arg("config") = py::none(),
      "Effective road point (w, beta_x, beta_y) under a front tire.");

  m.def(
      "tire_chain",
      [](double slip_rad, double slope_rad, double w_m, double beta_x_rad, double beta_y_rad,
         const py::object& config) {
        const auto cfg = to_config(config);
        const auto load = tire_load_state(cfg.params.vehicle, cfg.params.tire, slope_rad, Axle::Front,
                                          {w_m, beta_x_rad, beta_y_rad});
        const auto out = tire_output(cfg.params.tire, slip_rad, load);
        py::dict d;
        d["Fz_N"] = load.normal_force_N;
        d["z_a_m"] = load.static_deflection_m;
        d["rho_z_m"] = load.radial_deflection_m;
        d["Frad_N"] = load.radial_force_N;
        d["FyN_N"] = load.non_lagging_force_N;
        d["FcN_N"] = load.contact_patch_normal_N;
        d["Fy_N"] = out.lateral_force_N;
        d["trail_m"] = out.pneumatic_trail_m;
        d["Mz_Nm"] = out.aligning_moment_Nm;
        return d;
      },
      py::arg("slip_rad"), py::arg("slope_rad"), py::arg("w_m"), py::arg("beta_x_rad"), py::arg("beta_y_rad"),
      py::arg("config") = py::none(), "One front tire from normal load through aligning moment.");

  m.def(
      "rack_force",
      [](double mz_left, double mz_right, const py::object& config) {
        return rack_force(to_config(config).params.vehicle, mz_left, mz_right);
      },
      py::arg("mz_left_Nm"), py::arg("mz_right_Nm"), py::arg("config") = py::none());

  m.def(
      "slip_angle",
      [](double v, double yaw_rate, double delta, double u, Axle axle, const py::object& config) {
        return slip_angle({v, yaw_rate}, {delta, u}, to_config(config).params.vehicle, axle);
      },
      py::arg("v_mps"), py::arg("yaw_rate_radps"), py::arg("delta_rad"), py::arg("u_mps"),
      py::arg("axle") = Axle::Front, py::arg("config") = py::none());

  m.def("simulate", &simulate_py, py::arg("t_s"), py::arg("delta_rad"), py::arg("u_mps"),
        py::arg("theta_lat_rad") = py::none(), py::arg("theta_long_rad") = py::none(),
        py::arg("measured_rack_N") = py::none(), py::arg("cleats") = py::none(),
        py::arg("variants") = std::vector<std::string>{"rr", "fr"}, py::arg("config") = py::none(),
        py::arg("rate_hz") = 250.0, py::arg("settle_s") = 1.0,
        "Rack force traces for a uniformly sampled log. Cleats are dicts with start_m and optional "
        "length_m, height_m, width_m, yaw_rad.");

  m.def(
      "mean_absolute_error",
      [](const std::vector<double>& estimates, const std::vector<double>& measurements) {
        return mean_absolute_error(estimates, measurements);
      },
      py::arg("estimates"), py::arg("measurements"));

  m.def(
      "run",
      [](const std::filesystem::path& config_path, const std::filesystem::path& log_path,
         const std::filesystem::path& out_dir, const std::optional<std::filesystem::path>& slopes,
         const std::optional<std::filesystem::path>& cleats, const std::vector<std::string>& variants,
         double rate_hz, double settle_s) {
        RunOptions o;
        o.config_path = config_path;
        o.log_path = log_path;
        o.out_dir = out_dir;
        o.slope_path = slopes;
        o.cleat_path = cleats;
        o.rate_hz = rate_hz;
        o.settle_s = settle_s;
        o.variants.clear();
        for (const auto& key : variants) {
          const auto v = parse_variant_key(key);
          if (!v) throw Error(ErrorCode::ConfigError, "unknown variant '" + key + "' (expected rr or fr)");
          o.variants.push_back(*v);
        }
        Metrics metrics;
        {
          py::gil_scoped_release release;
          metrics = run(o);
        }
        return metrics_json(metrics, o.variants);
      },
      py::arg("config"), py::arg("log"), py::arg("out"), py::arg("slopes") = py::none(),
      py::arg("cleats") = py::none(), py::arg("variants") = std::vector<std::string>{"rr", "fr"},
      py::arg("rate_hz") = 250.0, py::arg("settle_s") = 1.0,
      "Same as the command-line tool. Returns the metrics JSON text.");
}
