// Replays a driving log through the rack force estimators and writes
// per-variant estimates, metrics and plot data.

#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "rackforce/config.hpp"
#include "rackforce/run.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Steering rack force estimation from driving logs"};
  app.set_version_flag("--version", "rackforce 0.1.0");

  rackforce::RunOptions options;
  std::string config_path;
  std::string log_path;
  std::string slope_path;
  std::string cleat_path;
  std::string out_dir;
  std::string variants = "rr,fr";
  bool print_default_config = false;

  app.add_option("--config", config_path, "JSON vehicle/tire configuration");
  app.add_option("--log", log_path, "Driving log CSV (t_s,delta_rad,u_mps[,rack_N])");
  app.add_option("--slopes", slope_path, "Slope CSV (t_s,theta_lat_rad,theta_long_rad)");
  app.add_option("--cleats", cleat_path, "Cleat map CSV (start_m,length_m,height_m,width_m,yaw_deg)");
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--variants", variants, "Comma separated model variants: rr, fr")->capture_default_str();
  app.add_option("--rate-hz", options.rate_hz, "Model rate; all channels are resampled onto it")
      ->capture_default_str();
  app.add_option("--settle-s", options.settle_s, "Initial window excluded from the error metrics")
      ->capture_default_str();
  app.add_flag("--print-default-config", print_default_config, "Print the default configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: UsageError: " << e.what() << '\n';
    return 2;
  }

  if (print_default_config) {
    std::cout << rackforce::dump_config(rackforce::RunConfig{});
    return 0;
  }

  for (const auto* required : {&config_path, &log_path, &out_dir}) {
    if (required->empty()) {
      std::cerr << "error: UsageError: --config, --log and --out are required\n";
      return 2;
    }
  }

  options.variants.clear();
  std::stringstream list(variants);
  for (std::string key; std::getline(list, key, ',');) {
    const auto variant = rackforce::parse_variant_key(key);
    if (!variant) {
      std::cerr << "error: UsageError: unknown variant '" << key << "' (expected rr or fr)\n";
      return 2;
    }
    options.variants.push_back(*variant);
  }

  options.config_path = config_path;
  options.log_path = log_path;
  if (!slope_path.empty()) options.slope_path = slope_path;
  if (!cleat_path.empty()) options.cleat_path = cleat_path;
  options.out_dir = out_dir;

  return rackforce::run_reporting(options, std::cerr);
}
