#include "serpent/plant.hpp"

#include "serpent/errors.hpp"

#include <cmath>

namespace serpent {

void PlantParams::validate() const {
  if (!(v_sidewind >= 0.0)) throw ConfigError("plant v_sidewind must be non-negative");
  if (!(omega_turn >= 0.0)) throw ConfigError("plant omega_turn must be non-negative");
  if (!(postural_length > 0.0)) throw ConfigError("plant postural_length must be positive");
  if (!(noise_position_std >= 0.0) || !(noise_yaw_std >= 0.0)) {
    throw ConfigError("plant noise levels must be non-negative");
  }
}

PlantState plant_step(const PlantState& state, const TrackerCommand& cmd, const PlantParams& params,
                      double dt, double delta_offset) {
  PlantState next = state;
  next.time = state.time + dt;
  Pose2D& p = next.pose;

  switch (cmd.kind) {
    case CommandKind::kStop:
    case CommandKind::kWaypointReached:
      return next;
    case CommandKind::kTurnLeft:
      p.yaw = wrap(state.pose.yaw + params.omega_turn * dt);
      return next;
    case CommandKind::kTurnRight:
      p.yaw = wrap(state.pose.yaw - params.omega_turn * dt);
      return next;
    case CommandKind::kSidewindWithSteering:
      break;
  }

  const double steer = cmd.delta - cmd.delta_base + delta_offset;
  const double rate = params.k_turn * steer / params.postural_length + params.drift_rate;
  const double dir0 = state.pose.yaw + params.crab_angle;
  const double dir1 = dir0 + rate * dt;
  const double v = params.v_sidewind;
  if (std::abs(rate) > 1e-12) {
    // Exact arc for a constant turning rate over the step.
    p.x = state.pose.x + v / rate * (std::sin(dir1) - std::sin(dir0));
    p.y = state.pose.y - v / rate * (std::cos(dir1) - std::cos(dir0));
  } else {
    p.x = state.pose.x + v * dt * std::cos(dir0);
    p.y = state.pose.y + v * dt * std::sin(dir0);
  }
  p.yaw = wrap(state.pose.yaw + rate * dt);
  return next;
}

}  // namespace serpent
