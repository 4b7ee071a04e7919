/**
 * @file simulator.hpp
 * @brief Dual-rate closed loop: CPG + plant at the fast rate, waypoint
 *        tracker at the slow rate.
 *
 * Fast tick n (time n*dt -> (n+1)*dt):
 *   1. every `slow_divider` ticks (including n = 0) the tracker decides on
 *      the latest estimate and the CPG is retargeted;
 *   2. the CPG advances and the plant moves under the active command;
 *   3. due disturbances are applied to the plant;
 *   4. the pose is measured (optional noise) and the yaw filter updated.
 *
 * Inside `stop_radius` of the active waypoint the plant is commanded to
 * halt, and the tracker's waypoint-reached decision is only accepted there
 * with the absolute heading error inside the waypoint tolerance. Until then
 * the robot turns in place towards the waypoint heading.
 */
#pragma once

#include "serpent/cpg.hpp"
#include "serpent/estimation.hpp"
#include "serpent/gaits.hpp"
#include "serpent/plant.hpp"
#include "serpent/steering.hpp"
#include "serpent/tracker.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace serpent {

struct SimConfig {
  std::vector<Waypoint> waypoints;
  Pose2D start;
  TrackerConfig tracker;
  SteeringConfig steering;
  PlantParams plant;
  CpgConfig cpg;
  GaitLibrary gaits;
  std::vector<DisturbanceEvent> disturbances;
  double duration = 300.0;
  double stop_radius = 0.2;
  int slow_divider = 100;
  bool yaw_filter = true;
  double staleness_timeout = 0.5;
  /// Measure the straight-gait drift first and feed its offset forward.
  bool calibrate_drift = false;
  double calibration_time = 20.0;
  bool record_joints = true;

  void validate() const;
};

/// One fast-loop sample.
struct LogRow {
  double t = 0.0;
  Pose2D pose;
  TrackerMode mode = TrackerMode::kSidewind;
  std::size_t waypoint_index = 1;
  double delta = 0.0;
  TrackingErrors errors;
  CommandKind command = CommandKind::kStop;
  JointVector joints = JointVector::Zero();
};

/// One slow-loop tracker decision.
struct StatusRow {
  double t = 0.0;
  std::size_t waypoint_index = 1;
  TrackerMode mode = TrackerMode::kSidewind;
  TrackerCommand command;
  TrackingErrors errors;
  bool stale = false;
  bool pose_warning = false;
  bool reach_deferred = false;
  /// Turning in place inside stop_radius to meet the waypoint heading.
  bool aligning = false;
};

struct TrajectoryLog {
  std::vector<LogRow> rows;
  std::vector<StatusRow> status;
  std::size_t waypoint_count = 0;
  bool finished = false;
  bool timed_out = false;
  double delta_offset = 0.0;
};

/// Where a run resumes: plant pose and tracker memory at a given tick.
struct ResumePoint {
  Pose2D pose;
  std::uint64_t tick = 0;
  TrackerState tracker;
};

class Simulator {
 public:
  explicit Simulator(SimConfig cfg);
  Simulator(SimConfig cfg, const ResumePoint& resume);

  /// One fast tick. Returns false once the run has finished or timed out.
  bool step();
  TrajectoryLog run();

  const TrajectoryLog& log() const { return log_; }
  const PlantState& plant() const { return plant_; }
  const TrackerState& tracker() const { return tracker_; }
  std::uint64_t tick_count() const { return tick_; }
  double time() const;
  bool done() const { return done_; }

 private:
  void slow_tick();
  void measure(bool has_new_pose);
  void record();
  GaitParams gait_for(const TrackerCommand& cmd) const;
  const Waypoint* active_waypoint() const;

  SimConfig cfg_;
  PlantState plant_;
  TrackerState tracker_;
  TrackerCommand active_;
  std::optional<CpgNetwork> cpg_;
  YawFilter filter_;
  StalenessMonitor staleness_;
  Pose2D estimate_;
  std::mt19937_64 rng_;
  std::vector<bool> applied_;
  double dropout_until_ = -1.0;
  double delta_offset_ = 0.0;
  std::uint64_t tick_ = 0;
  std::uint64_t max_ticks_ = 0;
  bool done_ = false;
  JointVector joints_ = JointVector::Zero();
  TrajectoryLog log_;
};

/// Straight-gait drift measurement: mean heading rate over `seconds` of
/// sidewinding with zero steering correction.
double measure_drift_rate(const PlantParams& params, const TrackerConfig& tracker, double seconds,
                          double dt);

TrajectoryLog run_scenario(const SimConfig& cfg);

/// Converged when the final pose lies within stop_radius of the last
/// waypoint with |absolute yaw error| <= the waypoint yaw threshold.
bool converged(const TrajectoryLog& log, const SimConfig& cfg);

}  // namespace serpent
