#pragma once

#include "serpent/metrics.hpp"
#include "serpent/simulator.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace serpent {

/// Values are written with 9 significant digits.
std::string format_number(double v);

/// Columns: t, x, y, yaw_rad, mode, wp_index, delta_rad, d_e, psi_e_rel,
/// psi_e_abs, psi_e. Mode is the numeric tracker mode (1, 2, 3).
void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log);
void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryLog& log);

/// One row per slow-loop decision.
void write_status_csv(const std::filesystem::path& path, const TrajectoryLog& log);

void write_summary(const std::filesystem::path& path, const TrajectoryLog& log,
                   const std::vector<WaypointSummary>& waypoints, bool converged);

/// A numeric CSV table addressed by header name.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  /// Column index, or -1 when absent.
  int column(const std::string& name) const;
};

/// Throws InvalidInputError on malformed or non-numeric content.
CsvTable read_csv(const std::filesystem::path& path);

/// Reads a timestamped trajectory: `t`, `x`, `y` required; optional `z`
/// and `yaw_rad` (or `yaw`).
TimedTrajectory read_trajectory_csv(const std::filesystem::path& path);

}  // namespace serpent
