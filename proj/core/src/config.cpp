#include "shuttle/config.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "shuttle/constants.hpp"

namespace shuttle::cli {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::string& scope) {
  for (const auto& [key, value] : obj.items())
    if (!allowed.count(key))
      throw std::invalid_argument("config: unknown key '" + scope + key + "'");
}

double require_number(const json& obj, const std::string& key,
                      const std::string& scope) {
  if (!obj.contains(key) || !obj[key].is_number())
    throw std::invalid_argument("config: '" + scope + key +
                                "' must be a number");
  return obj[key].get<double>();
}

phys::TrapConfig parse_trap(const json& trap) {
  reject_unknown_keys(trap, {"omega0_hz", "gs_calibration", "depth_uK", "species"},
                      "trap.");
  const double depth_uK = require_number(trap, "depth_uK", "trap.");
  double mass = phys::kMassRb87;
  if (trap.contains("species")) {
    const std::string species = trap["species"].get<std::string>();
    if (species != "Rb87")
      throw std::invalid_argument("config: unsupported species '" + species +
                                  "'");
  }
  double omega0 = 0.0;
  const bool has_f = trap.contains("omega0_hz");
  const bool has_cal = trap.contains("gs_calibration");
  if (has_f == has_cal)
    throw std::invalid_argument(
        "config: trap needs exactly one of omega0_hz or gs_calibration");
  if (has_f) {
    omega0 = 2.0 * std::numbers::pi * require_number(trap, "omega0_hz", "trap.");
  } else {
    const json& cal = trap["gs_calibration"];
    reject_unknown_keys(cal, {"T_uK", "fraction"}, "trap.gs_calibration.");
    omega0 = phys::calibrate_omega(
        require_number(cal, "T_uK", "trap.gs_calibration.") * 1e-6,
        require_number(cal, "fraction", "trap.gs_calibration."));
  }
  return phys::TrapConfig(omega0, depth_uK * 1e-6, mass);
}

}  // namespace

const phys::TrapConfig& RunConfig::require_trap() const {
  if (!trap) throw std::invalid_argument("config: missing 'trap' block");
  return *trap;
}

const traj::MotionProfile& RunConfig::require_profile() const {
  if (!profile) throw std::invalid_argument("config: missing 'profile'");
  return *profile;
}

double RunConfig::require_distance() const {
  if (!distance_m) throw std::invalid_argument("config: missing 'distance_um'");
  return *distance_m;
}

double RunConfig::require_duration() const {
  if (!duration_s) throw std::invalid_argument("config: missing 'duration_us'");
  return *duration_s;
}

RunConfig parse_config_text(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object())
    throw std::invalid_argument("config: top level must be an object");
  reject_unknown_keys(
      root, {"trap", "profile", "distance_um", "duration_us", "seed", "samples"},
      "");

  RunConfig cfg;
  if (root.contains("trap")) cfg.trap = parse_trap(root["trap"]);
  if (root.contains("profile"))
    cfg.profile = traj::MotionProfile::parse(root["profile"].get<std::string>());
  if (root.contains("distance_um")) {
    const double d = require_number(root, "distance_um", "");
    if (d < 0.0) throw std::invalid_argument("config: distance_um must be >= 0");
    cfg.distance_m = d * 1e-6;
  }
  if (root.contains("duration_us")) {
    const double t = require_number(root, "duration_us", "");
    if (!(t > 0.0)) throw std::invalid_argument("config: duration_us must be > 0");
    cfg.duration_s = t * 1e-6;
  }
  if (root.contains("seed")) {
    if (!root["seed"].is_number_integer())
      throw std::invalid_argument("config: seed must be an integer");
    cfg.seed = root["seed"].get<std::uint64_t>();
  }
  if (root.contains("samples")) {
    if (!root["samples"].is_number_integer())
      throw std::invalid_argument("config: samples must be an integer");
    cfg.samples = root["samples"].get<long>();
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace shuttle::cli
