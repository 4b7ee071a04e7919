/**
 * @file scenario_config.hpp
 * @brief Scenario files: flat `key = value` lines grouped under `[section]`
 *        headers. Angles are entered in degrees and stored in radians.
 *
 *   duration = 120
 *   seed = 3
 *   output_dir = out/star
 *
 *   [start]
 *   x = -2.0
 *   y = 0.0
 *   yaw_deg = 0
 *
 *   [waypoints]
 *   wp1 = 0.0, 1.0, 90     # x, y, yaw_deg
 *
 *   [disturbances]
 *   d1 = 30.5, jump, 1.0, 0.0   # time, jump, dx, dy
 *   d2 = 60.5, twist, 90        # time, twist, angle_deg
 *   d3 = 80.0, dropout, 2.0     # time, dropout, duration
 *
 * Unknown sections or keys and repeated keys are rejected with a
 * `file:line:` anchored ConfigError.
 */
#pragma once

#include "serpent/simulator.hpp"

#include <cstdint>
#include <string>
#include <string_view>

namespace serpent {

/// Start-pose generation for batch convergence studies: two ring arcs
/// behind the waypoint, centred on the direction it is approached along.
struct BatchConfig {
  double inner_radius = 1.8;
  double outer_radius = 2.4;
  double arc_half_angle = deg2rad(20.0);
};

struct ScenarioConfig {
  SimConfig sim;
  std::uint64_t seed = 0;
  std::string output_dir = "serpent_out";
  BatchConfig batch;
};

ScenarioConfig parse_scenario(std::string_view text, std::string_view source = "<config>");
ScenarioConfig load_scenario(const std::string& path);

}  // namespace serpent
