#include "serpent/csv_io.hpp"

#include "serpent/errors.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace serpent {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write '" + path.string() + "'");
  return out;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  while (true) {
    const auto comma = line.find(',');
    out.push_back(trim(line.substr(0, comma)));
    if (comma == std::string_view::npos) break;
    line = line.substr(comma + 1);
  }
  return out;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v == 0.0 ? 0.0 : v);  // no "-0"
  return buf;
}

void write_trajectory_csv(std::ostream& out, const TrajectoryLog& log) {
  out << "t,x,y,yaw_rad,mode,wp_index,delta_rad,d_e,psi_e_rel,psi_e_abs,psi_e\n";
  for (const LogRow& r : log.rows) {
    out << format_number(r.t) << ',' << format_number(r.pose.x) << ',' << format_number(r.pose.y) << ','
        << format_number(r.pose.yaw) << ',' << static_cast<int>(r.mode) << ',' << r.waypoint_index << ','
        << format_number(r.delta) << ',' << format_number(r.errors.distance) << ','
        << format_number(r.errors.yaw_rel) << ',' << format_number(r.errors.yaw_abs) << ','
        << format_number(r.errors.yaw) << '\n';
  }
}

void write_trajectory_csv(const std::filesystem::path& path, const TrajectoryLog& log) {
  std::ofstream out = open_out(path);
  write_trajectory_csv(out, log);
}

void write_status_csv(const std::filesystem::path& path, const TrajectoryLog& log) {
  std::ofstream out = open_out(path);
  out << "t,wp_index,mode,command,delta_rad,d_e,psi_e_rel,psi_e_abs,psi_e,weight,stale,pose_warning,"
         "reach_deferred,aligning\n";
  for (const StatusRow& s : log.status) {
    out << format_number(s.t) << ',' << s.waypoint_index << ',' << static_cast<int>(s.mode) << ','
        << to_string(s.command.kind) << ',' << format_number(s.command.delta) << ','
        << format_number(s.errors.distance) << ',' << format_number(s.errors.yaw_rel) << ','
        << format_number(s.errors.yaw_abs) << ',' << format_number(s.errors.yaw) << ','
        << format_number(s.errors.weight) << ',' << int(s.stale) << ',' << int(s.pose_warning) << ','
        << int(s.reach_deferred) << ',' << int(s.aligning) << '\n';
  }
}

void write_summary(const std::filesystem::path& path, const TrajectoryLog& log,
                   const std::vector<WaypointSummary>& waypoints, bool converged) {
  std::ofstream out = open_out(path);
  const double end = log.rows.empty() ? 0.0 : log.rows.back().t;
  out << "status: " << (converged ? "converged" : log.timed_out ? "timed out" : "not converged") << '\n';
  out << "duration_s: " << format_number(end) << '\n';
  out << "waypoints: " << waypoints.size() << '\n';
  out << "delta_offset_rad: " << format_number(log.delta_offset) << '\n';
  out << "sawtooth_resets: " << count_sawtooth_resets(log) << '\n';
  for (const WaypointSummary& w : waypoints) {
    out << "wp" << w.index << ": reached=" << (w.reached ? "yes" : "no")
        << " time_s=" << format_number(w.time_to_reach) << " final_d_e=" << format_number(w.final_distance)
        << " final_psi_e_abs_deg=" << format_number(rad2deg(w.final_yaw_abs))
        << " mode_switches=" << w.mode_switches << '\n';
  }
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

CsvTable read_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInputError("cannot open '" + path.string() + "'");
  CsvTable table;
  std::string line;
  int line_no = 0;
  const std::string where = path.string() + ":";
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto cells = split(line);
    if (table.header.empty()) {
      for (auto c : cells) table.header.emplace_back(c);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw InvalidInputError(where + std::to_string(line_no) + ": expected " +
                              std::to_string(table.header.size()) + " columns, got " +
                              std::to_string(cells.size()));
    }
    std::vector<double> row;
    row.reserve(cells.size());
    for (auto c : cells) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(c.data(), c.data() + c.size(), v);
      if (c.empty() || ec != std::errc{} || ptr != c.data() + c.size()) {
        throw InvalidInputError(where + std::to_string(line_no) + ": not a number: '" + std::string(c) + "'");
      }
      row.push_back(v);
    }
    table.rows.push_back(std::move(row));
  }
  if (table.header.empty()) throw InvalidInputError(where + " empty file");
  return table;
}

TimedTrajectory read_trajectory_csv(const std::filesystem::path& path) {
  const CsvTable table = read_csv(path);
  const int t = table.column("t");
  const int x = table.column("x");
  const int y = table.column("y");
  if (t < 0 || x < 0 || y < 0) {
    throw InvalidInputError(path.string() + ": header must contain t, x and y columns");
  }
  const int z = table.column("z");
  int yaw = table.column("yaw_rad");
  if (yaw < 0) yaw = table.column("yaw");

  TimedTrajectory out;
  out.samples.reserve(table.rows.size());
  for (const auto& r : table.rows) {
    TimedSample s;
    s.t = r[static_cast<std::size_t>(t)];
    s.position = {r[static_cast<std::size_t>(x)], r[static_cast<std::size_t>(y)],
                  z >= 0 ? r[static_cast<std::size_t>(z)] : 0.0};
    s.yaw = yaw >= 0 ? r[static_cast<std::size_t>(yaw)] : 0.0;
    out.samples.push_back(s);
  }
  out.validate();
  return out;
}

}  // namespace serpent
