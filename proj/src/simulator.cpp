#include "serpent/simulator.hpp"

#include "serpent/errors.hpp"

#include <cmath>
#include <utility>

namespace serpent {

void SimConfig::validate() const {
  if (waypoints.empty()) throw ConfigError("scenario needs at least one waypoint");
  if (!(duration > 0.0)) throw ConfigError("scenario duration must be positive");
  if (!(stop_radius >= 0.0)) throw ConfigError("stop_radius must be non-negative");
  if (slow_divider < 1) throw ConfigError("slow_divider must be at least 1");
  if (calibrate_drift && !(calibration_time > 0.0)) throw ConfigError("calibration_time must be positive");
  tracker.validate();
  steering.validate();
  plant.validate();
  cpg.validate();
}

double measure_drift_rate(const PlantParams& params, const TrackerConfig& tracker, double seconds, double dt) {
  PlantState s;
  const TrackerCommand straight = TrackerCommand::sidewind(tracker.delta_base, tracker.delta_base);
  const auto steps = static_cast<std::uint64_t>(std::llround(seconds / dt));
  double turned = 0.0;
  for (std::uint64_t i = 0; i < steps; ++i) {
    const PlantState next = plant_step(s, straight, params, dt);
    turned += wrap(next.pose.yaw - s.pose.yaw);
    s = next;
  }
  return turned / (static_cast<double>(steps) * dt);
}

Simulator::Simulator(SimConfig cfg) : Simulator(cfg, ResumePoint{cfg.start, 0, TrackerState{}}) {}

Simulator::Simulator(SimConfig cfg, const ResumePoint& resume)
    : cfg_(std::move(cfg)),
      tracker_(resume.tracker),
      active_(resume.tracker.last_command),
      staleness_(cfg_.staleness_timeout, static_cast<double>(resume.tick) * cfg_.cpg.dt),
      rng_(cfg_.plant.seed),
      tick_(resume.tick) {
  cfg_.validate();
  plant_.pose = resume.pose;
  plant_.time = time();
  max_ticks_ = static_cast<std::uint64_t>(std::llround(cfg_.duration / cfg_.cpg.dt));

  if (cfg_.calibrate_drift) {
    delta_offset_ = bias_from_drift(
        measure_drift_rate(cfg_.plant, cfg_.tracker, cfg_.calibration_time, cfg_.cpg.dt), cfg_.steering);
    cfg_.steering.delta_offset = delta_offset_;
  }
  log_.delta_offset = delta_offset_;
  log_.waypoint_count = cfg_.waypoints.size();

  // Fresh starts enter sidewinding at the nominal offset; resumed runs keep
  // their pending command.
  const TrackerCommand start_cmd = active_.kind == CommandKind::kStop && !tracker_.finished
                                       ? TrackerCommand::sidewind(cfg_.tracker.delta_base, cfg_.tracker.delta_base)
                                       : active_;
  const GaitParams start_gait = start_cmd.kind == CommandKind::kWaypointReached
                                    ? gait_for(TrackerCommand::sidewind(cfg_.tracker.delta_base,
                                                                        cfg_.tracker.delta_base))
                                    : gait_for(start_cmd);
  cpg_.emplace(start_gait, cfg_.cpg);
  joints_ = cpg_->commands();

  const double t0 = time();
  applied_.assign(cfg_.disturbances.size(), false);
  for (std::size_t i = 0; i < cfg_.disturbances.size(); ++i) {
    applied_[i] = cfg_.disturbances[i].time <= t0 && resume.tick > 0;
  }
  measure(true);
  record();
}

double Simulator::time() const { return static_cast<double>(tick_) * cfg_.cpg.dt; }

const Waypoint* Simulator::active_waypoint() const {
  const std::size_t n = cfg_.waypoints.size();
  const std::size_t k = tracker_.k > n ? n : tracker_.k;
  return &cfg_.waypoints[k - 1];
}

GaitParams Simulator::gait_for(const TrackerCommand& cmd) const {
  switch (cmd.kind) {
    case CommandKind::kSidewindWithSteering: {
      GaitParams g = cfg_.gaits.sidewind;
      g.amplitude = modify_amplitudes(g.amplitude, cmd.delta, cfg_.steering);
      return g;
    }
    case CommandKind::kTurnLeft: return cfg_.gaits.turn_left;
    case CommandKind::kTurnRight: return cfg_.gaits.turn_right;
    case CommandKind::kStop: {
      GaitParams g = cpg_ ? cpg_->gait() : cfg_.gaits.sidewind;
      g.amplitude.setZero();
      g.name = "stopped";
      return g;
    }
    case CommandKind::kWaypointReached: break;
  }
  return cpg_ ? cpg_->gait() : cfg_.gaits.sidewind;
}

void Simulator::measure(bool has_new_pose) {
  const PosePolicy policy = staleness_.check(time(), has_new_pose);
  (void)policy;
  if (!has_new_pose) return;
  Pose2D meas = plant_.pose;
  if (cfg_.plant.noise_position_std > 0.0) {
    std::normal_distribution<double> n(0.0, cfg_.plant.noise_position_std);
    meas.x += n(rng_);
    meas.y += n(rng_);
  }
  if (cfg_.plant.noise_yaw_std > 0.0) {
    std::normal_distribution<double> n(0.0, cfg_.plant.noise_yaw_std);
    meas.yaw = wrap(meas.yaw + n(rng_));
  }
  meas.yaw = cfg_.yaw_filter ? filter_.push(meas.yaw) : wrap(meas.yaw);
  estimate_ = meas;
}

void Simulator::record() {
  LogRow row;
  row.t = time();
  row.pose = plant_.pose;
  row.mode = tracker_.mode;
  row.waypoint_index = tracker_.k;
  row.delta = active_.kind == CommandKind::kSidewindWithSteering ? active_.delta : tracker_.last_delta;
  row.errors = compute_errors(plant_.pose, *active_waypoint(), cfg_.tracker);
  row.command = active_.kind;
  if (cfg_.record_joints) row.joints = joints_;
  log_.rows.push_back(row);
}

void Simulator::slow_tick() {
  const PosePolicy policy = [&] {
    switch (staleness_.level()) {
      case StalenessLevel::kFresh: return PosePolicy::kUseLatest;
      case StalenessLevel::kWarning: return PosePolicy::kWarnUseLatest;
      case StalenessLevel::kFallback: break;
    }
    return PosePolicy::kUseIdentity;
  }();
  const Pose2D pose = apply_pose_policy(policy, estimate_);
  TickResult res = tick(tracker_, pose, cfg_.waypoints, cfg_.tracker, policy);

  bool deferred = false;
  bool aligning = false;
  const TrackingErrors& e = res.state.last_errors;
  const bool inside = e.distance <= cfg_.stop_radius;
  const bool misaligned = std::abs(e.yaw_abs) > cfg_.tracker.yaw_threshold_waypoint;
  auto hold = [&](TrackerMode mode, const TrackerCommand& cmd) {
    TrackerState held = tracker_;
    held.mode = mode;
    held.last_errors = e;
    held.stale = res.state.stale;
    held.pose_warning = res.state.pose_warning;
    held.last_command = cmd;
    if (cmd.kind == CommandKind::kSidewindWithSteering) held.last_delta = cmd.delta;
    res = {held, cmd};
  };
  if (res.command.kind == CommandKind::kWaypointReached && !inside) {
    // Keep regulating position: stay on this waypoint and keep sidewinding.
    hold(TrackerMode::kSidewind, steering_command(e.yaw, cfg_.tracker));
    deferred = true;
  } else if (inside && misaligned && !res.state.stale &&
             (res.command.kind == CommandKind::kWaypointReached ||
              res.command.kind == CommandKind::kSidewindWithSteering)) {
    // Halted at the waypoint: turn in place onto its heading first.
    const TrackerCommand turn =
        tracker_.last_command.is_turn() ? tracker_.last_command : turn_command(e.yaw_abs, cfg_.tracker);
    hold(TrackerMode::kTurnNear, turn);
    aligning = true;
  }

  tracker_ = res.state;
  if (res.command.kind != CommandKind::kWaypointReached) {
    cpg_->retarget(gait_for(res.command));
  }
  active_ = res.command;

  StatusRow st;
  st.t = time();
  st.waypoint_index = tracker_.k;
  st.mode = tracker_.mode;
  st.command = res.command;
  st.errors = tracker_.last_errors;
  st.stale = tracker_.stale;
  st.pose_warning = tracker_.pose_warning;
  st.reach_deferred = deferred;
  st.aligning = aligning;
  log_.status.push_back(st);

  if (tracker_.finished) {
    log_.finished = true;
    done_ = true;
  }
}

bool Simulator::step() {
  if (done_) return false;
  if (tick_ % static_cast<std::uint64_t>(cfg_.slow_divider) == 0) {
    slow_tick();
    if (done_) return false;
  }

  joints_ = cpg_->tick();

  TrackerCommand cmd = active_;
  if (cmd.kind == CommandKind::kSidewindWithSteering) {
    const Waypoint& wp = *active_waypoint();
    const double d = std::hypot(wp.position.x() - estimate_.x, wp.position.y() - estimate_.y);
    if (d <= cfg_.stop_radius) cmd = TrackerCommand::of(CommandKind::kWaypointReached);
  }
  plant_ = plant_step(plant_, cmd, cfg_.plant, cfg_.cpg.dt, delta_offset_);
  ++tick_;
  plant_.time = time();

  const double now = time();
  for (std::size_t i = 0; i < cfg_.disturbances.size(); ++i) {
    if (applied_[i] || now < cfg_.disturbances[i].time) continue;
    applied_[i] = true;
    std::visit(
        [&](const auto& ev) {
          using T = std::decay_t<decltype(ev)>;
          if constexpr (std::is_same_v<T, PositionJump>) {
            plant_.pose.x += ev.offset.x();
            plant_.pose.y += ev.offset.y();
          } else if constexpr (std::is_same_v<T, YawTwist>) {
            plant_.pose.yaw = wrap(plant_.pose.yaw + ev.angle);
          } else {
            dropout_until_ = std::max(dropout_until_, now + ev.duration);
          }
        },
        cfg_.disturbances[i].kind);
  }

  measure(now >= dropout_until_);
  record();

  if (tick_ >= max_ticks_) {
    log_.timed_out = true;
    done_ = true;
  }
  return !done_;
}

TrajectoryLog Simulator::run() {
  while (step()) {
  }
  return log_;
}

TrajectoryLog run_scenario(const SimConfig& cfg) { return Simulator(cfg).run(); }

bool converged(const TrajectoryLog& log, const SimConfig& cfg) {
  if (!log.finished || log.rows.empty()) return false;
  const Waypoint& wp = cfg.waypoints.back();
  const Pose2D& p = log.rows.back().pose;
  const double d = std::hypot(wp.position.x() - p.x, wp.position.y() - p.y);
  return d <= cfg.stop_radius + 1e-9 && std::abs(wrap(wp.yaw - p.yaw)) <= cfg.tracker.yaw_threshold_waypoint;
}

}  // namespace serpent
