#include "rackforce/config.hpp"

#include <fstream>
#include <functional>
#include <sstream>
#include <utility>
#include <vector>

#include <json.hpp>

namespace rackforce {

namespace {

using json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& message) { throw Error(ErrorCode::ConfigError, message); }

// Binds JSON keys of one object to handlers and rejects anything else.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) fail(path_ + " must be an object");
  }

  ObjectReader& number(const char* key, double& target) {
    handlers_.emplace_back(key, [this, key, &target](const json& value) {
      if (!value.is_number()) fail(path_ + "." + key + " must be a number");
      target = value.get<double>();
    });
    return *this;
  }

  ObjectReader& custom(const char* key, std::function<void(const json&)> handler) {
    handlers_.emplace_back(key, std::move(handler));
    return *this;
  }

  void read() const {
    for (const auto& [key, value] : node_.items()) {
      bool known = false;
      for (const auto& [name, handler] : handlers_) {
        if (key == name) {
          handler(value);
          known = true;
          break;
        }
      }
      if (!known) fail("unknown key " + path_ + "." + key);
    }
  }

  const std::string& path() const { return path_; }

 private:
  const json& node_;
  std::string path_;
  std::vector<std::pair<std::string, std::function<void(const json&)>>> handlers_;
};

constexpr std::pair<LoadBasis, const char*> kBasisNames[] = {
    {LoadBasis::Normal, "normal"},
    {LoadBasis::Radial, "radial"},
    {LoadBasis::ContactPatch, "contact_patch"},
    {LoadBasis::Combined, "combined"},
};

void read_polynomial(const json& value, const std::string& path, LoadPolynomial& poly) {
  if (value.is_number()) {
    poly = LoadPolynomial::constant(value.get<double>());
    return;
  }
  poly = LoadPolynomial{};
  ObjectReader(value, path)
      .custom("load",
              [&](const json& v) {
                if (!v.is_string()) fail(path + ".load must be a string");
                const auto name = v.get<std::string>();
                for (const auto& [basis, label] : kBasisNames) {
                  if (name == label) {
                    poly.basis = basis;
                    return;
                  }
                }
                fail(path + ".load must be one of normal, radial, contact_patch, combined");
              })
      .custom("p",
              [&](const json& v) {
                if (!v.is_array() || v.empty() || v.size() > 3) fail(path + ".p must be an array of 1-3 numbers");
                double* slots[] = {&poly.p0, &poly.p1, &poly.p2};
                for (std::size_t i = 0; i < v.size(); ++i) {
                  if (!v[i].is_number()) fail(path + ".p must contain numbers");
                  *slots[i] = v[i].get<double>();
                }
              })
      .read();
}

json polynomial_to_json(const LoadPolynomial& poly) {
  const char* name = "normal";
  for (const auto& [basis, label] : kBasisNames) {
    if (basis == poly.basis) name = label;
  }
  return json{{"load", name}, {"p", {poly.p0, poly.p1, poly.p2}}};
}

template <class Table>
void read_table(const json& value, const std::string& path,
                std::initializer_list<std::pair<const char*, LoadPolynomial Table::*>> members, Table& table) {
  ObjectReader reader(value, path);
  for (const auto& [key, member] : members) {
    reader.custom(key, [&table, member, path, key](const json& v) {
      read_polynomial(v, path + "." + key, table.*member);
    });
  }
  reader.read();
}

const std::initializer_list<std::pair<const char*, LoadPolynomial LateralCoefficients::*>> kLateralKeys{
    {"B", &LateralCoefficients::B},   {"C", &LateralCoefficients::C},   {"D", &LateralCoefficients::D},
    {"E", &LateralCoefficients::E},   {"SH", &LateralCoefficients::SH}, {"SV", &LateralCoefficients::SV},
};
const std::initializer_list<std::pair<const char*, LoadPolynomial TrailCoefficients::*>> kTrailKeys{
    {"B", &TrailCoefficients::B}, {"C", &TrailCoefficients::C},   {"D", &TrailCoefficients::D},
    {"E", &TrailCoefficients::E}, {"SH", &TrailCoefficients::SH},
};
const std::initializer_list<std::pair<const char*, LoadPolynomial ResidualCoefficients::*>> kResidualKeys{
    {"B", &ResidualCoefficients::B},
    {"D", &ResidualCoefficients::D},
};
const std::initializer_list<std::pair<const char*, LoadPolynomial NonLaggingCoefficients::*>> kNonLaggingKeys{
    {"B", &NonLaggingCoefficients::B},
    {"C", &NonLaggingCoefficients::C},
    {"D", &NonLaggingCoefficients::D},
};

template <class Table>
json table_to_json(const Table& table,
                   std::initializer_list<std::pair<const char*, LoadPolynomial Table::*>> members) {
  json out = json::object();
  for (const auto& [key, member] : members) out[key] = polynomial_to_json(table.*member);
  return out;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    fail(std::string("invalid JSON: ") + e.what());
  }

  RunConfig config;
  auto& vp = config.params.vehicle;
  auto& tp = config.params.tire;

  ObjectReader(doc, "config")
      .custom("vehicle",
              [&](const json& v) {
                ObjectReader(v, "vehicle")
                    .number("mass_kg", vp.mass_kg)
                    .number("yaw_inertia_kgm2", vp.yaw_inertia_kgm2)
                    .number("dist_cg_front_m", vp.dist_cg_front_m)
                    .number("dist_cg_rear_m", vp.dist_cg_rear_m)
                    .number("moment_to_rack_ratio_per_m", vp.moment_to_rack_ratio_per_m)
                    .number("gravity_mps2", vp.gravity_mps2)
                    .number("front_track_width_m", vp.front_track_width_m)
                    .read();
              })
      .custom("tire",
              [&](const json& v) {
                ObjectReader(v, "tire")
                    .number("vertical_stiffness_Npm", tp.vertical_stiffness_Npm)
                    .number("q_fz1", tp.q_fz1)
                    .number("q_fz2", tp.q_fz2)
                    .number("q_fz3", tp.q_fz3)
                    .number("rear_cornering_stiffness_Nprad", tp.rear_cornering_stiffness_Nprad)
                    .custom("lateral", [&](const json& t) { read_table(t, "tire.lateral", kLateralKeys, tp.lateral); })
                    .custom("trail", [&](const json& t) { read_table(t, "tire.trail", kTrailKeys, tp.trail); })
                    .custom("residual",
                            [&](const json& t) { read_table(t, "tire.residual", kResidualKeys, tp.residual); })
                    .custom("non_lagging",
                            [&](const json& t) {
                              read_table(t, "tire.non_lagging", kNonLaggingKeys, tp.non_lagging);
                            })
                    .custom("cam",
                            [&](const json& c) {
                              ObjectReader(c, "tire.cam")
                                  .number("half_length_m", tp.cam.half_length_m)
                                  .number("half_height_m", tp.cam.half_height_m)
                                  .number("spacing_m", tp.cam.spacing_m)
                                  .number("track_half_width_m", tp.cam.track_half_width_m)
                                  .number("exponent", tp.cam.exponent)
                                  .read();
                            })
                    .read();
              })
      .custom("road",
              [&](const json& v) {
                ObjectReader(v, "road")
                    .custom("slope_mode",
                            [&](const json& m) {
                              const auto mode = m.is_string() ? m.get<std::string>() : std::string();
                              if (mode == "lateral") {
                                config.slope_mode = SlopeMode::Lateral;
                              } else if (mode == "longitudinal") {
                                config.slope_mode = SlopeMode::Longitudinal;
                              } else {
                                fail("road.slope_mode must be \"lateral\" or \"longitudinal\"");
                              }
                            })
                    .read();
              })
      .read();

  config.params = validate_params(vp, tp);
  return config;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open config " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

std::string dump_config(const RunConfig& config) {
  const auto& vp = config.params.vehicle;
  const auto& tp = config.params.tire;
  json doc;
  doc["vehicle"] = {
      {"mass_kg", vp.mass_kg},
      {"yaw_inertia_kgm2", vp.yaw_inertia_kgm2},
      {"dist_cg_front_m", vp.dist_cg_front_m},
      {"dist_cg_rear_m", vp.dist_cg_rear_m},
      {"moment_to_rack_ratio_per_m", vp.moment_to_rack_ratio_per_m},
      {"gravity_mps2", vp.gravity_mps2},
      {"front_track_width_m", vp.front_track_width_m},
  };
  doc["tire"] = {
      {"vertical_stiffness_Npm", tp.vertical_stiffness_Npm},
      {"q_fz1", tp.q_fz1},
      {"q_fz2", tp.q_fz2},
      {"q_fz3", tp.q_fz3},
      {"rear_cornering_stiffness_Nprad", tp.rear_cornering_stiffness_Nprad},
      {"lateral", table_to_json(tp.lateral, kLateralKeys)},
      {"trail", table_to_json(tp.trail, kTrailKeys)},
      {"residual", table_to_json(tp.residual, kResidualKeys)},
      {"non_lagging", table_to_json(tp.non_lagging, kNonLaggingKeys)},
      {"cam",
       {
           {"half_length_m", tp.cam.half_length_m},
           {"half_height_m", tp.cam.half_height_m},
           {"spacing_m", tp.cam.spacing_m},
           {"track_half_width_m", tp.cam.track_half_width_m},
           {"exponent", tp.cam.exponent},
       }},
  };
  doc["road"] = {{"slope_mode", config.slope_mode == SlopeMode::Lateral ? "lateral" : "longitudinal"}};
  return doc.dump(2) + "\n";
}

}  // namespace rackforce
