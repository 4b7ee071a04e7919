#pragma once

#include "serpent/types.hpp"

#include <array>
#include <cstddef>

namespace serpent {

/// Moving average of the last `kWindow` yaw samples, unwrapped across +-pi.
///
/// Samples are unwrapped backwards from the newest one, so the output is a
/// function of the raw samples in the window only (no accumulated offset).
class YawFilter {
 public:
  static constexpr std::size_t kWindow = 10;

  /// Returns the filtered yaw in (-pi, pi].
  double push(double yaw);
  double value() const { return value_; }
  std::size_t size() const { return count_; }
  void reset();

 private:
  std::array<double, kWindow> raw_{};
  std::size_t head_ = 0;  // next write slot
  std::size_t count_ = 0;
  double value_ = 0.0;
};

enum class StalenessLevel { kFresh, kWarning, kFallback };
enum class PosePolicy { kUseLatest, kWarnUseLatest, kUseIdentity };

/// Pose age monitor: warns at one timeout, falls back to the identity pose
/// at two.
class StalenessMonitor {
 public:
  explicit StalenessMonitor(double timeout = 0.5, double start_time = 0.0);

  /// Throws MonotonicClockError when `now` goes backwards.
  PosePolicy check(double now, bool has_new_pose);

  StalenessLevel level() const { return level_; }
  double timeout() const { return timeout_; }
  double last_update_time() const { return last_update_; }

 private:
  double timeout_;
  double last_update_;
  double last_check_;
  StalenessLevel level_ = StalenessLevel::kFresh;
};

/// Identity pose under UseIdentity, `pose` otherwise.
Pose2D apply_pose_policy(PosePolicy policy, const Pose2D& pose);

}  // namespace serpent
