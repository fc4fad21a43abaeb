#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rackforce/estimator.hpp"

namespace rackforce {

struct RunOptions {
  std::filesystem::path config_path;
  std::filesystem::path log_path;
  std::optional<std::filesystem::path> slope_path;
  std::optional<std::filesystem::path> cleat_path;
  std::filesystem::path out_dir;
  std::vector<ModelVariant> variants{ModelVariant::RR, ModelVariant::FlatRoad2DOF};
  double rate_hz = 250.0;
  double settle_s = 1.0;
};

// File names written into RunOptions::out_dir.
std::string estimate_file_name(ModelVariant variant);  // estimates_<key>.csv
inline constexpr const char* kMetricsFileName = "metrics.json";
inline constexpr const char* kPlotDataFileName = "plot_data.csv";

std::vector<std::string> estimate_csv_columns();
std::vector<std::string> plot_csv_columns(const std::vector<ModelVariant>& variants);

void write_estimate_csv(std::ostream& out, const VariantTrace& trace);
void write_plot_csv(std::ostream& out, const SimulationResult& result);
std::string metrics_json(const Metrics& metrics, const std::vector<ModelVariant>& variants);

// Ingest, simulate, score and write every artifact. Throws Error. Samples
// outside the small-angle regime are reported on `warnings` when given.
Metrics run(const RunOptions& options, std::ostream* warnings = nullptr);

// run() with errors reported as one "error: <Category>: <message>" line on
// `err`. Returns the process exit code: 0 ok, 2 input error, 3 numeric failure.
int run_reporting(const RunOptions& options, std::ostream& err);

}  // namespace rackforce
