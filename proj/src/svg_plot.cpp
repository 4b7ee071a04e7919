#include "serpent/svg_plot.hpp"

#include "serpent/csv_io.hpp"
#include "serpent/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>

namespace serpent {
namespace {

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void finish() {
    if (!(lo <= hi)) lo = 0.0, hi = 1.0;
    if (hi - lo < 1e-9) lo -= 0.5, hi += 0.5;
    const double pad = 0.05 * (hi - lo);
    lo -= pad;
    hi += pad;
  }
  double span() const { return hi - lo; }
};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

std::string palette_color(std::size_t i) { return kPalette[i % std::size(kPalette)]; }

std::string render_svg(const std::vector<PlotPanel>& panels, double width, double panel_height) {
  const double ml = 70, mr = 150, mt = 30, mb = 45;
  const double height = panel_height * static_cast<double>(panels.size());
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width) << "\" height=\"" << fmt(height)
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const PlotPanel& panel = panels[p];
    const double top = panel_height * static_cast<double>(p);
    const double pw = width - ml - mr;
    const double ph = panel_height - mt - mb;

    Range rx, ry;
    for (const auto& s : panel.series) {
      for (double v : s.x) rx.add(v);
      for (double v : s.y) ry.add(v);
    }
    rx.finish();
    ry.finish();
    double sx = pw / rx.span();
    double sy = ph / ry.span();
    if (panel.equal_aspect) {
      const double s = std::min(sx, sy);
      rx.hi = rx.lo + pw / s;
      ry.hi = ry.lo + ph / s;
      sx = sy = s;
    }
    auto X = [&](double v) { return ml + (v - rx.lo) * sx; };
    auto Y = [&](double v) { return top + mt + ph - (v - ry.lo) * sy; };

    svg << "<g>\n<text x=\"" << fmt(ml) << "\" y=\"" << fmt(top + 18) << "\" font-size=\"13\">"
        << escape(panel.title) << "</text>\n";
    for (const PlotBand& b : panel.bands) {
      const double x0 = std::max(X(b.x0), ml);
      const double x1 = std::min(X(b.x1), ml + pw);
      if (x1 <= x0) continue;
      svg << "<rect x=\"" << fmt(x0) << "\" y=\"" << fmt(top + mt) << "\" width=\"" << fmt(x1 - x0)
          << "\" height=\"" << fmt(ph) << "\" fill=\"" << b.color << "\"/>\n";
    }
    svg << "<rect x=\"" << fmt(ml) << "\" y=\"" << fmt(top + mt) << "\" width=\"" << fmt(pw) << "\" height=\""
        << fmt(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i) {
      const double vx = rx.lo + rx.span() * i / 4.0;
      const double vy = ry.lo + ry.span() * i / 4.0;
      svg << "<text x=\"" << fmt(X(vx)) << "\" y=\"" << fmt(top + mt + ph + 15)
          << "\" text-anchor=\"middle\">" << format_number(std::round(vx * 1000) / 1000) << "</text>\n";
      svg << "<text x=\"" << fmt(ml - 5) << "\" y=\"" << fmt(Y(vy) + 4) << "\" text-anchor=\"end\">"
          << format_number(std::round(vy * 1000) / 1000) << "</text>\n";
    }
    svg << "<text x=\"" << fmt(ml + pw / 2) << "\" y=\"" << fmt(top + panel_height - 8)
        << "\" text-anchor=\"middle\">" << escape(panel.x_label) << "</text>\n";
    svg << "<text transform=\"translate(" << fmt(16) << "," << fmt(top + mt + ph / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(panel.y_label) << "</text>\n";

    for (std::size_t k = 0; k < panel.series.size(); ++k) {
      const PlotSeries& s = panel.series[k];
      const std::size_t n = std::min(s.x.size(), s.y.size());
      if (s.markers) {
        for (std::size_t i = 0; i < n; ++i) {
          svg << "<circle cx=\"" << fmt(X(s.x[i])) << "\" cy=\"" << fmt(Y(s.y[i])) << "\" r=\"4\" fill=\""
              << s.color << "\"/>\n";
        }
      } else if (n > 0) {
        svg << "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"" << s.color << "\" points=\"";
        for (std::size_t i = 0; i < n; ++i) svg << fmt(X(s.x[i])) << ',' << fmt(Y(s.y[i])) << ' ';
        svg << "\"/>\n";
      }
      const double ly = top + mt + 12 + 16 * static_cast<double>(k);
      svg << "<rect x=\"" << fmt(ml + pw + 10) << "\" y=\"" << fmt(ly - 8) << "\" width=\"10\" height=\"10\" fill=\""
          << s.color << "\"/>\n";
      svg << "<text x=\"" << fmt(ml + pw + 25) << "\" y=\"" << fmt(ly) << "\">" << escape(s.label) << "</text>\n";
    }
    svg << "</g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_svg(const std::filesystem::path& path, const std::vector<PlotPanel>& panels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInputError("cannot write '" + path.string() + "'");
  out << render_svg(panels);
}

std::vector<PlotPanel> tracking_panels(const TrajectoryLog& log, const std::vector<Waypoint>& waypoints) {
  // Thin the fast-rate log so large runs stay small on disk.
  const std::size_t stride = std::max<std::size_t>(1, log.rows.size() / 4000);
  PlotSeries path{"path", kPalette[0], {}, {}, false};
  PlotSeries dist{"d_e", kPalette[0], {}, {}, false};
  PlotSeries yaw_abs{"abs yaw err", kPalette[1], {}, {}, false};
  PlotSeries yaw_blend{"blended yaw err", kPalette[2], {}, {}, false};
  for (std::size_t i = 0; i < log.rows.size(); i += stride) {
    const LogRow& r = log.rows[i];
    path.x.push_back(r.pose.x);
    path.y.push_back(r.pose.y);
    dist.x.push_back(r.t);
    dist.y.push_back(r.errors.distance);
    yaw_abs.x.push_back(r.t);
    yaw_abs.y.push_back(rad2deg(r.errors.yaw_abs));
    yaw_blend.x.push_back(r.t);
    yaw_blend.y.push_back(rad2deg(r.errors.yaw));
  }
  PlotSeries wps{"waypoints", kPalette[1], {}, {}, true};
  for (const Waypoint& w : waypoints) {
    wps.x.push_back(w.position.x());
    wps.y.push_back(w.position.y());
  }

  // Alternate shading per active waypoint.
  std::vector<PlotBand> bands;
  if (!log.rows.empty()) {
    double start = log.rows.front().t;
    std::size_t idx = log.rows.front().waypoint_index;
    for (const LogRow& r : log.rows) {
      if (r.waypoint_index != idx) {
        if (idx % 2 == 1) bands.push_back({start, r.t, "#eef3fa"});
        start = r.t;
        idx = r.waypoint_index;
      }
    }
    if (idx % 2 == 1) bands.push_back({start, log.rows.back().t, "#eef3fa"});
  }

  PlotPanel xy{"Trajectory", "x [m]", "y [m]", {path, wps}, {}, true};
  PlotPanel de{"Distance to active waypoint", "t [s]", "d_e [m]", {dist}, bands, false};
  PlotPanel ye{"Yaw error", "t [s]", "[deg]", {yaw_abs, yaw_blend}, bands, false};
  return {xy, de, ye};
}

std::vector<PlotPanel> error_panels(const ErrorReport& report) {
  PlotSeries ex{"x", kPalette[0], {}, {}, false};
  PlotSeries ey{"y", kPalette[1], {}, {}, false};
  PlotSeries ez{"z", kPalette[2], {}, {}, false};
  for (const AxisError& e : report.per_axis) {
    ex.x.push_back(e.t);
    ex.y.push_back(e.error.x());
    ey.x.push_back(e.t);
    ey.y.push_back(e.error.y());
    ez.x.push_back(e.t);
    ez.y.push_back(e.error.z());
  }
  return {PlotPanel{"Position error (estimate - reference)", "t [s]", "error [m]", {ex, ey, ez}, {}, false}};
}

}  // namespace serpent
