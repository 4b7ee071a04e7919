#include "serpent/tracker.hpp"

#include "serpent/errors.hpp"

#include <algorithm>
#include <cmath>

namespace serpent {

void TrackerConfig::validate() const {
  if (!(d_threshold > 0.0)) throw ConfigError("tracker d_threshold must be positive");
  if (!(yaw_threshold_waypoint > 0.0) || !(yaw_threshold_turn > 0.0)) {
    throw ConfigError("tracker yaw thresholds must be positive");
  }
  if (!(delta_limit >= 0.0)) throw ConfigError("tracker delta_limit must be non-negative");
  const auto& b = blend;
  if (!(b.inner_start < b.inner_end && b.inner_end <= b.outer_start && b.outer_start < b.outer_end)) {
    throw ConfigError("blend breakpoints must be increasing");
  }
  if (!(b.plateau >= 0.0 && b.plateau <= 1.0)) throw ConfigError("blend plateau must lie in [0, 1]");
}

std::string_view to_string(TrackerMode mode) {
  switch (mode) {
    case TrackerMode::kSidewind: return "sidewind";
    case TrackerMode::kTurnFar: return "turn_far";
    case TrackerMode::kTurnNear: return "turn_near";
  }
  return "unknown";
}

std::string_view to_string(CommandKind kind) {
  switch (kind) {
    case CommandKind::kSidewindWithSteering: return "sidewind";
    case CommandKind::kTurnLeft: return "turn_left";
    case CommandKind::kTurnRight: return "turn_right";
    case CommandKind::kWaypointReached: return "waypoint_reached";
    case CommandKind::kStop: return "stop";
  }
  return "unknown";
}

double smoothstep(double t) {
  t = std::clamp(t, 0.0, 1.0);
  return t * t * (3.0 - 2.0 * t);
}

double blend_weight(double d, const BlendProfile& p) {
  if (!(d > p.inner_start)) return 1.0;
  if (d <= p.inner_end) {
    return 1.0 - (1.0 - p.plateau) * smoothstep((d - p.inner_start) / (p.inner_end - p.inner_start));
  }
  if (d <= p.outer_start) return p.plateau;
  if (d <= p.outer_end) {
    return p.plateau - p.plateau * smoothstep((d - p.outer_start) / (p.outer_end - p.outer_start));
  }
  return 0.0;
}

TrackingErrors compute_errors(const Pose2D& pose, const Waypoint& wp, const TrackerConfig& cfg) {
  TrackingErrors e;
  const double dx = wp.position.x() - pose.x;
  const double dy = wp.position.y() - pose.y;
  e.distance = std::hypot(dx, dy);
  e.yaw_rel = e.distance < cfg.bearing_deadband ? 0.0 : wrap(std::atan2(dy, dx) - pose.yaw);
  e.yaw_abs = wrap(wp.yaw - pose.yaw);
  e.weight = blend_weight(e.distance, cfg.blend);
  e.yaw = wrap(e.weight * e.yaw_abs + (1.0 - e.weight) * e.yaw_rel);
  return e;
}

TrackerCommand steering_command(double yaw_error, const TrackerConfig& cfg) {
  const double correction = std::clamp(cfg.k_p * yaw_error, -cfg.delta_limit, cfg.delta_limit);
  return TrackerCommand::sidewind(cfg.delta_base + correction, cfg.delta_base);
}

TrackerCommand turn_command(double yaw_error, const TrackerConfig& cfg) {
  return TrackerCommand::of((yaw_error > 0.0) == cfg.positive_error_turns_left ? CommandKind::kTurnLeft
                                                                             : CommandKind::kTurnRight);
}

namespace {

CommandKind turn_towards(bool positive, const TrackerConfig& cfg) {
  return positive == cfg.positive_error_turns_left ? CommandKind::kTurnLeft : CommandKind::kTurnRight;
}

void process_far(TrackerState& s, const TrackingErrors& e, const TrackerConfig& cfg, TrackerCommand& cmd) {
  const double yaw = e.yaw;
  if (s.mode == TrackerMode::kSidewind) {
    const double delta_raw = cfg.delta_base + cfg.k_p * yaw;
    if (std::abs(yaw) <= cfg.yaw_threshold_turn) {
      cmd = steering_command(yaw, cfg);
    } else if (yaw > cfg.yaw_threshold_turn || delta_raw > cfg.delta_turn_trigger) {
      s.mode = TrackerMode::kTurnFar;
      cmd = TrackerCommand::of(turn_towards(true, cfg));
    } else {
      // yaw < -psi_turn or delta_raw < -trigger; one of them holds here.
      s.mode = TrackerMode::kTurnFar;
      cmd = TrackerCommand::of(turn_towards(false, cfg));
    }
    return;
  }
  // Turning (either turn mode; a turn started NEAR may drift FAR after a push).
  if (std::abs(yaw) <= cfg.yaw_threshold_waypoint) {
    s.mode = TrackerMode::kSidewind;
    cmd = steering_command(yaw, cfg);
  } else {
    cmd = s.last_command.is_turn() ? s.last_command : TrackerCommand::of(turn_towards(yaw > 0.0, cfg));
  }
}

void process_near(TrackerState& s, const TrackingErrors& e, std::size_t count, const TrackerConfig& cfg,
                  TrackerCommand& cmd) {
  const double yaw = e.yaw;
  if (s.mode == TrackerMode::kSidewind) {
    if (std::abs(yaw) <= cfg.yaw_threshold_waypoint) {
      ++s.k;
      s.finished = s.k > count;
      cmd = TrackerCommand::of(CommandKind::kWaypointReached);
    } else {
      s.mode = TrackerMode::kTurnNear;
      cmd = TrackerCommand::of(turn_towards(yaw > 0.0, cfg));
    }
    return;
  }
  if (std::abs(yaw) <= cfg.yaw_threshold_waypoint) {
    s.mode = TrackerMode::kSidewind;
    cmd = steering_command(yaw, cfg);
  } else {
    cmd = s.last_command.is_turn() ? s.last_command : TrackerCommand::of(turn_towards(yaw > 0.0, cfg));
  }
}

}  // namespace

TickResult tick(const TrackerState& state, const Pose2D& pose, std::span<const Waypoint> waypoints,
                const TrackerConfig& cfg, PosePolicy policy) {
  if (waypoints.empty()) throw InvalidInputError("tracker needs at least one waypoint");

  TickResult out{state, state.last_command};
  TrackerState& s = out.state;
  s.stale = false;
  s.pose_warning = policy == PosePolicy::kWarnUseLatest;

  if (s.finished || s.k > waypoints.size()) {
    s.finished = true;
    out.command = TrackerCommand::of(CommandKind::kStop);
    s.last_command = out.command;
    return out;
  }
  if (policy == PosePolicy::kUseIdentity) {
    s.stale = true;
    return out;
  }

  const TrackingErrors e = compute_errors(pose, waypoints[s.k - 1], cfg);
  s.last_errors = e;
  TrackerCommand cmd;
  if (e.distance > cfg.d_threshold) {
    process_far(s, e, cfg, cmd);
  } else {
    process_near(s, e, waypoints.size(), cfg, cmd);
  }
  if (cmd.kind == CommandKind::kSidewindWithSteering) s.last_delta = cmd.delta;
  s.last_command = cmd;
  out.command = cmd;
  return out;
}

}  // namespace serpent
