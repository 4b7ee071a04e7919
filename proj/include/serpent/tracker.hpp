/**
 * @file tracker.hpp
 * @brief Waypoint tracking state machine with distance-blended yaw error.
 *
 * Far from the active waypoint (d_e > d_th) the robot sidewinds with a
 * proportional steering correction, or turns in place while the blended
 * yaw error exceeds the turn trigger. Near the waypoint it turns in place
 * until the heading is within the waypoint tolerance, then advances.
 *
 * Action table (distance, mode, yaw error -> action):
 *
 *   FAR   Sidewind  |e| <= psi_turn   sidewind with steering correction
 *   FAR   Sidewind  |e| >  psi_turn   switch to turn-in-place
 *   FAR   Turning   |e| <= psi_wp     switch back to sidewind
 *   NEAR  Sidewind  |e| <= psi_wp     waypoint reached
 *   NEAR  Sidewind  |e| >  psi_wp     turn to align heading
 *   NEAR  Turning   |e| <= psi_wp     switch to sidewind (reached next tick)
 */
#pragma once

#include "serpent/angles.hpp"
#include "serpent/estimation.hpp"
#include "serpent/types.hpp"

#include <Eigen/Core>

#include <span>
#include <string_view>

namespace serpent {

struct Waypoint {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double yaw = 0.0;
};

/// Piecewise weight on the absolute yaw error: 1 at the waypoint, easing
/// down to `plateau`, holding, then easing to 0.
struct BlendProfile {
  double inner_start = 0.0;
  double inner_end = 0.5;
  double outer_start = 1.0;
  double outer_end = 1.5;
  double plateau = 0.5;
};

struct TrackerConfig {
  double d_threshold = 0.35;
  double yaw_threshold_waypoint = deg2rad(30.0);
  double yaw_threshold_turn = deg2rad(40.0);
  double delta_base = deg2rad(14.0);
  double delta_limit = deg2rad(7.0);
  double k_p = 1.0;
  /// Auxiliary turn trigger on the pre-clamp steering command.
  double delta_turn_trigger = deg2rad(20.0);
  /// Below this distance the bearing to the waypoint is treated as 0.
  double bearing_deadband = 0.01;
  /// Positive yaw error turns left (counter-clockwise) when true.
  bool positive_error_turns_left = true;
  BlendProfile blend;

  void validate() const;
};

enum class TrackerMode { kSidewind = 1, kTurnFar = 2, kTurnNear = 3 };

std::string_view to_string(TrackerMode mode);

enum class CommandKind { kSidewindWithSteering, kTurnLeft, kTurnRight, kWaypointReached, kStop };

std::string_view to_string(CommandKind kind);

struct TrackerCommand {
  CommandKind kind = CommandKind::kStop;
  /// Steering command delta (only meaningful for kSidewindWithSteering).
  double delta = 0.0;
  /// The base steering offset delta_0 the command was built around.
  double delta_base = 0.0;

  static TrackerCommand sidewind(double delta, double delta_base) {
    return {CommandKind::kSidewindWithSteering, delta, delta_base};
  }
  static TrackerCommand of(CommandKind kind) { return {kind, 0.0, 0.0}; }

  bool is_turn() const { return kind == CommandKind::kTurnLeft || kind == CommandKind::kTurnRight; }
  friend bool operator==(const TrackerCommand&, const TrackerCommand&) = default;
};

struct TrackingErrors {
  double distance = 0.0;
  double yaw_rel = 0.0;
  double yaw_abs = 0.0;
  double yaw = 0.0;  // blended
  double weight = 0.0;
};

struct TrackerState {
  /// One-based index of the active waypoint; count + 1 once finished.
  std::size_t k = 1;
  TrackerMode mode = TrackerMode::kSidewind;
  double last_delta = 0.0;
  TrackingErrors last_errors;
  TrackerCommand last_command = TrackerCommand::of(CommandKind::kStop);
  bool finished = false;
  bool stale = false;
  /// Pose age passed the warning threshold on the last tick.
  bool pose_warning = false;
};

struct TickResult {
  TrackerState state;
  TrackerCommand command;
};

/// 3t^2 - 2t^3 with t clamped to [0, 1].
double smoothstep(double t);

double blend_weight(double distance, const BlendProfile& profile = {});

TrackingErrors compute_errors(const Pose2D& pose, const Waypoint& wp, const TrackerConfig& cfg = {});

/// Turn-in-place command that reduces a yaw error of the given sign.
TrackerCommand turn_command(double yaw_error, const TrackerConfig& cfg);

/// delta_0 + clamp(K_p * yaw_error, +-delta_lim).
TrackerCommand steering_command(double yaw_error, const TrackerConfig& cfg);

/// One slow-loop decision. A UseIdentity policy (stale pose) re-emits the
/// previous command and sets the stale flag without touching the mode.
TickResult tick(const TrackerState& state, const Pose2D& pose, std::span<const Waypoint> waypoints,
                const TrackerConfig& cfg, PosePolicy policy = PosePolicy::kUseLatest);

}  // namespace serpent
