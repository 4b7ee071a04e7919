#include "serpent/metrics.hpp"

#include "serpent/errors.hpp"

#include <Eigen/Geometry>

#include <algorithm>
#include <cassert>
#include <cmath>

namespace serpent {

void TimedTrajectory::validate() const {
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (!std::isfinite(samples[i].t) || !samples[i].position.allFinite()) {
      throw InvalidInputError("trajectory sample " + std::to_string(i) + " is not finite");
    }
    if (i > 0 && !(samples[i].t > samples[i - 1].t)) {
      throw InvalidInputError("trajectory timestamps must strictly increase (sample " + std::to_string(i) + ")");
    }
  }
}

Association associate(const TimedTrajectory& est, const TimedTrajectory& ref, double max_dt) {
  if (est.samples.empty() || ref.samples.empty()) throw AssociationError("cannot associate an empty trajectory");
  est.validate();
  ref.validate();

  Association out;
  const auto& r = ref.samples;
  for (std::size_t i = 0; i < est.samples.size(); ++i) {
    const double t = est.samples[i].t;
    auto it = std::lower_bound(r.begin(), r.end(), t, [](const TimedSample& s, double v) { return s.t < v; });
    std::size_t best = r.size();
    double best_dt = max_dt;
    auto consider = [&](std::size_t j) {
      const double dt = std::abs(r[j].t - t);
      if (dt <= best_dt && (best == r.size() || dt < best_dt)) {
        best = j;
        best_dt = dt;
      }
    };
    if (it != r.end()) consider(static_cast<std::size_t>(it - r.begin()));
    if (it != r.begin()) consider(static_cast<std::size_t>(it - r.begin()) - 1);
    if (best == r.size()) {
      ++out.unpaired;
    } else {
      out.pairs.emplace_back(i, best);
    }
  }
  if (out.pairs.empty()) throw AssociationError("no estimate sample lies within max_dt of a reference sample");
  return out;
}

ErrorReport error_stats(const std::vector<double>& errors) {
  ErrorReport rep;
  rep.count = errors.size();
  if (errors.empty()) return rep;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (double e : errors) {
    rep.max_abs = std::max(rep.max_abs, std::abs(e));
    sum += std::abs(e);
    sum_sq += e * e;
  }
  const auto n = static_cast<double>(errors.size());
  rep.mean = sum / n;
  rep.rmse = std::sqrt(sum_sq / n);
  assert(rep.rmse >= rep.mean * (1.0 - 1e-12));
  return rep;
}

ErrorReport error_stats(const Association& assoc, const TimedTrajectory& est, const TimedTrajectory& ref,
                        bool align) {
  const std::size_t n = assoc.pairs.size();
  Eigen::Matrix3Xd src(3, static_cast<Eigen::Index>(n));
  Eigen::Matrix3Xd dst(3, static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    src.col(static_cast<Eigen::Index>(k)) = est.samples[assoc.pairs[k].first].position;
    dst.col(static_cast<Eigen::Index>(k)) = ref.samples[assoc.pairs[k].second].position;
  }
  if (align && n >= 3) {
    const Eigen::Matrix4d T = Eigen::umeyama(src, dst, false);
    src = (T.topLeftCorner<3, 3>() * src).colwise() + T.topRightCorner<3, 1>();
  }

  std::vector<double> norms;
  norms.reserve(n);
  ErrorReport rep;
  rep.per_axis.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Eigen::Vector3d e = src.col(static_cast<Eigen::Index>(k)) - dst.col(static_cast<Eigen::Index>(k));
    norms.push_back(e.norm());
    rep.per_axis.push_back({est.samples[assoc.pairs[k].first].t, e});
  }
  ErrorReport stats = error_stats(norms);
  stats.per_axis = std::move(rep.per_axis);
  return stats;
}

std::vector<WaypointSummary> tracking_summary(const TrajectoryLog& log, const std::vector<Waypoint>& waypoints) {
  std::vector<WaypointSummary> out;
  double start = log.status.empty() ? 0.0 : log.status.front().t;
  for (std::size_t i = 1; i <= waypoints.size(); ++i) {
    WaypointSummary s;
    s.index = i;
    s.segment_start = start;
    // Timing comes from the slow-loop decisions: the waypoint is reached on
    // the first decision that moves the index past it.
    for (const StatusRow& st : log.status) {
      if (st.waypoint_index > i) {
        s.reached = true;
        s.time_to_reach = st.t - s.segment_start;
        start = st.t;
        break;
      }
    }
    bool seen = false;
    TrackerMode last_mode = TrackerMode::kSidewind;
    for (const LogRow& row : log.rows) {
      if (row.waypoint_index != i) continue;
      if (seen && row.mode != last_mode) ++s.mode_switches;
      seen = true;
      last_mode = row.mode;
      s.final_distance = row.errors.distance;
      s.final_yaw_abs = row.errors.yaw_abs;
    }
    out.push_back(s);
  }
  return out;
}

int count_sawtooth_resets(const TrajectoryLog& log, double threshold) {
  if (log.rows.empty()) return 0;
  int resets = log.rows.front().errors.distance > threshold ? 1 : 0;
  for (std::size_t i = 1; i < log.rows.size(); ++i) {
    const LogRow& prev = log.rows[i - 1];
    const LogRow& row = log.rows[i];
    if (row.waypoint_index != prev.waypoint_index && row.waypoint_index <= log.waypoint_count &&
        row.errors.distance - prev.errors.distance > threshold) {
      ++resets;
    }
  }
  return resets;
}

TimedTrajectory to_timed_trajectory(const TrajectoryLog& log) {
  TimedTrajectory out;
  out.samples.reserve(log.rows.size());
  for (const LogRow& row : log.rows) {
    out.samples.push_back({row.t, {row.pose.x, row.pose.y, 0.0}, row.pose.yaw});
  }
  return out;
}

}  // namespace serpent
