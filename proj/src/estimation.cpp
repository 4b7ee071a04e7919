#include "serpent/estimation.hpp"

#include "serpent/errors.hpp"
#include "serpent/angles.hpp"

#include <cmath>

namespace serpent {

double YawFilter::push(double yaw) {
  if (!std::isfinite(yaw)) throw InvalidInputError("yaw sample is not finite");
  raw_[head_] = yaw;
  head_ = (head_ + 1) % kWindow;
  if (count_ < kWindow) ++count_;

  // Chronological order: oldest at offset 0.
  std::array<double, kWindow> unwrapped{};
  const std::size_t oldest = (head_ + kWindow - count_) % kWindow;
  auto at = [&](std::size_t i) { return raw_[(oldest + i) % kWindow]; };
  unwrapped[count_ - 1] = at(count_ - 1);
  for (std::size_t i = count_ - 1; i-- > 0;) {
    unwrapped[i] = unwrapped[i + 1] - wrap(at(i + 1) - at(i));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < count_; ++i) sum += unwrapped[i];
  value_ = wrap(sum / static_cast<double>(count_));
  return value_;
}

void YawFilter::reset() {
  head_ = 0;
  count_ = 0;
  value_ = 0.0;
}

StalenessMonitor::StalenessMonitor(double timeout, double start_time)
    : timeout_(timeout), last_update_(start_time), last_check_(start_time) {
  if (!(timeout > 0.0)) throw ConfigError("staleness timeout must be positive");
}

PosePolicy StalenessMonitor::check(double now, bool has_new_pose) {
  if (now < last_check_) throw MonotonicClockError("staleness check time went backwards");
  last_check_ = now;
  if (has_new_pose) last_update_ = now;
  const double age = now - last_update_;
  if (age < timeout_) {
    level_ = StalenessLevel::kFresh;
    return PosePolicy::kUseLatest;
  }
  if (age < 2.0 * timeout_) {
    level_ = StalenessLevel::kWarning;
    return PosePolicy::kWarnUseLatest;
  }
  level_ = StalenessLevel::kFallback;
  return PosePolicy::kUseIdentity;
}

Pose2D apply_pose_policy(PosePolicy policy, const Pose2D& pose) {
  return policy == PosePolicy::kUseIdentity ? Pose2D{} : pose;
}

}  // namespace serpent
