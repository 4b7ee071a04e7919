#include "serpent/batch.hpp"

#include "serpent/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <thread>

namespace serpent {

std::vector<Pose2D> batch_starts(const ScenarioConfig& cfg, int count) {
  if (count < 1) throw InvalidInputError("batch needs at least one start");
  if (cfg.sim.waypoints.empty()) throw ConfigError("batch needs a waypoint");
  const Waypoint& wp = cfg.sim.waypoints.front();
  const double behind = wp.yaw + kPi;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> heading(-kPi, kPi);

  std::vector<Pose2D> out{cfg.sim.start};
  for (int i = 1; i < count; ++i) {
    const double r = i % 2 == 1 ? cfg.batch.inner_radius : cfg.batch.outer_radius;
    const double frac = count > 2 ? static_cast<double>(i - 1) / (count - 2) : 0.5;
    const double bearing = behind + cfg.batch.arc_half_angle * (2.0 * frac - 1.0);
    out.push_back({wp.position.x() + r * std::cos(bearing), wp.position.y() + r * std::sin(bearing),
                   wrap(heading(rng))});
  }
  return out;
}

std::vector<BatchRun> run_batch(const ScenarioConfig& cfg, int count, int jobs) {
  const std::vector<Pose2D> starts = batch_starts(cfg, count);
  std::vector<BatchRun> runs(starts.size());

  auto run_one = [&](std::size_t i) {
    SimConfig sim = cfg.sim;
    sim.waypoints.resize(1);
    sim.start = starts[i];
    sim.plant.seed = cfg.seed + i;
    sim.record_joints = false;
    runs[i].index = static_cast<int>(i);
    runs[i].start = starts[i];
    runs[i].log = run_scenario(sim);
    runs[i].converged = converged(runs[i].log, sim);
  };

  const int workers = std::clamp(jobs, 1, static_cast<int>(starts.size()));
  if (workers == 1) {
    for (std::size_t i = 0; i < starts.size(); ++i) run_one(i);
    return runs;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(starts.size());
  {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < starts.size(); i = next++) {
          try {
            run_one(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return runs;
}

}  // namespace serpent
