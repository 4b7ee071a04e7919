#pragma once

#include "serpent/scenario_config.hpp"

#include <vector>

namespace serpent {

/// Run 0 keeps the configured start. The others alternate between the two
/// ring radii, spread evenly over the arc behind the first waypoint (the
/// side it is approached from), with seeded random headings.
std::vector<Pose2D> batch_starts(const ScenarioConfig& cfg, int count);

struct BatchRun {
  int index = 0;
  Pose2D start;
  TrajectoryLog log;
  bool converged = false;
};

/// Runs every start against the first waypoint alone. Instances are
/// independent; `jobs` > 1 spreads them over worker threads.
std::vector<BatchRun> run_batch(const ScenarioConfig& cfg, int count, int jobs = 1);

}  // namespace serpent
