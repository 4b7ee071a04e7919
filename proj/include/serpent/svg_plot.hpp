/**
 * @file svg_plot.hpp
 * @brief Minimal line-plot writer: stacked panels in one SVG document.
 */
#pragma once

#include "serpent/metrics.hpp"
#include "serpent/simulator.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace serpent {

struct PlotSeries {
  std::string label;
  std::string color = "#1f77b4";
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;  // draw points instead of a line
};

/// A shaded vertical band, e.g. the span during which one waypoint is active.
struct PlotBand {
  double x0 = 0.0;
  double x1 = 0.0;
  std::string color = "#eeeeee";
};

struct PlotPanel {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  std::vector<PlotBand> bands;
  bool equal_aspect = false;
};

/// Cycles through a fixed qualitative palette.
std::string palette_color(std::size_t i);

std::string render_svg(const std::vector<PlotPanel>& panels, double width = 720.0, double panel_height = 320.0);
void write_svg(const std::filesystem::path& path, const std::vector<PlotPanel>& panels);

/// XY path with waypoints, distance error and yaw errors against time.
std::vector<PlotPanel> tracking_panels(const TrajectoryLog& log, const std::vector<Waypoint>& waypoints);

/// Per-axis position error against time.
std::vector<PlotPanel> error_panels(const ErrorReport& report);

}  // namespace serpent
