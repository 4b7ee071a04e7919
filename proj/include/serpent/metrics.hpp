#pragma once

#include "serpent/simulator.hpp"

#include <Eigen/Core>

#include <cstddef>
#include <utility>
#include <vector>

namespace serpent {

struct TimedSample {
  double t = 0.0;
  Eigen::Vector3d position = Eigen::Vector3d::Zero();
  double yaw = 0.0;
};

struct TimedTrajectory {
  std::vector<TimedSample> samples;

  /// Throws InvalidInputError unless timestamps strictly increase.
  void validate() const;
};

struct Association {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;  // (estimate, reference)
  std::size_t unpaired = 0;
};

/// Pairs each estimate sample with the nearest-in-time reference sample
/// within max_dt. Throws AssociationError when nothing pairs.
Association associate(const TimedTrajectory& est, const TimedTrajectory& ref, double max_dt = 0.02);

struct AxisError {
  double t = 0.0;
  Eigen::Vector3d error = Eigen::Vector3d::Zero();  // estimate - reference
};

struct ErrorReport {
  double max_abs = 0.0;
  double mean = 0.0;
  double rmse = 0.0;
  std::size_t count = 0;
  std::vector<AxisError> per_axis;
};

/// Statistics of the Euclidean position error over the associated pairs.
/// With `align`, the estimate is first rigidly aligned to the reference
/// (least squares, no scale).
ErrorReport error_stats(const Association& assoc, const TimedTrajectory& est, const TimedTrajectory& ref,
                        bool align = false);

/// max / mean / rmse of a plain list of error magnitudes.
ErrorReport error_stats(const std::vector<double>& errors);

struct WaypointSummary {
  std::size_t index = 0;  // one-based
  bool reached = false;
  double time_to_reach = 0.0;  // from segment start
  double segment_start = 0.0;
  double final_distance = 0.0;
  double final_yaw_abs = 0.0;  // signed
  int mode_switches = 0;
};

std::vector<WaypointSummary> tracking_summary(const TrajectoryLog& log, const std::vector<Waypoint>& waypoints);

/// Upward jumps > `threshold` in the slow-loop distance error at waypoint
/// activations. The first activation counts as a jump from zero.
int count_sawtooth_resets(const TrajectoryLog& log, double threshold = 0.5);

TimedTrajectory to_timed_trajectory(const TrajectoryLog& log);

}  // namespace serpent
