#ifndef SHUTTLE_CONFIG_HPP
#define SHUTTLE_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>

#include "shuttle/profile.hpp"
#include "shuttle/trap.hpp"

namespace shuttle::cli {

/// Declarative run configuration (JSON file). The trap block accepts either
/// an explicit frequency (`omega0_hz`, ordinary Hz) or a ground-state
/// calibration pair (`gs_calibration: {T_uK, fraction}`); depth is
/// `depth_uK` and `species` selects the atomic mass ("Rb87").
struct RunConfig {
  std::optional<phys::TrapConfig> trap;
  std::optional<traj::MotionProfile> profile;
  std::optional<double> distance_m;
  std::optional<double> duration_s;
  std::optional<std::uint64_t> seed;
  std::optional<long> samples;

  const phys::TrapConfig& require_trap() const;
  const traj::MotionProfile& require_profile() const;
  double require_distance() const;
  double require_duration() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::string& path);

}  // namespace shuttle::cli

#endif
