#pragma once

#include "serpent/tracker.hpp"
#include "serpent/types.hpp"

#include <Eigen/Core>

#include <cstdint>
#include <variant>

namespace serpent {

/// Planar surrogate for the robot: a kinematic unicycle whose heading rate
/// follows the amplitude-steering law and whose travel direction is offset
/// from the heading by a crab angle.
struct PlantParams {
  double v_sidewind = 0.2;     // m/s
  double crab_angle = 0.0;     // rad
  double omega_turn = 0.5;     // rad/s
  double k_turn = 1.0;
  double postural_length = 0.5;  // m
  double drift_rate = 0.0;     // rad/s, sidewinding only
  double noise_position_std = 0.0;  // m, measurement noise per tick
  double noise_yaw_std = 0.0;       // rad
  std::uint64_t seed = 0;

  void validate() const;
};

struct PlantState {
  Pose2D pose;
  double time = 0.0;
};

/// Advances the plant by dt under `cmd`. `delta_offset` is the drift
/// feed-forward added to the steering input.
PlantState plant_step(const PlantState& state, const TrackerCommand& cmd, const PlantParams& params,
                      double dt, double delta_offset = 0.0);

struct PositionJump {
  Eigen::Vector2d offset = Eigen::Vector2d::Zero();
};
struct YawTwist {
  double angle = 0.0;
};
/// Pose measurements stop arriving for `duration` seconds.
struct PoseDropout {
  double duration = 0.0;
};

struct DisturbanceEvent {
  double time = 0.0;
  std::variant<PositionJump, YawTwist, PoseDropout> kind;
};

}  // namespace serpent
