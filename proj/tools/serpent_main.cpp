// serpent: run tracking scenarios, evaluate trajectories, batch convergence studies.
#include "serpent/batch.hpp"
#include "serpent/csv_io.hpp"
#include "serpent/errors.hpp"
#include "serpent/metrics.hpp"
#include "serpent/scenario_config.hpp"
#include "serpent/svg_plot.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace serpent;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoConvergence = 2;

fs::path output_dir(const ScenarioConfig& cfg) {
  const char* env = std::getenv("SERPENT_OUTPUT_DIR");
  fs::path dir = env != nullptr && *env != '\0' ? fs::path(env) : fs::path(cfg.output_dir);
  fs::create_directories(dir);
  return dir;
}

int cmd_run(const std::string& config_path) {
  const ScenarioConfig cfg = load_scenario(config_path);
  const fs::path dir = output_dir(cfg);

  const TrajectoryLog log = run_scenario(cfg.sim);
  const auto summary = tracking_summary(log, cfg.sim.waypoints);
  const bool ok = converged(log, cfg.sim);

  write_trajectory_csv(dir / "trajectory.csv", log);
  write_status_csv(dir / "tracking_status.csv", log);
  write_summary(dir / "summary.txt", log, summary, ok);
  write_svg(dir / "tracking.svg", tracking_panels(log, cfg.sim.waypoints));

  int reached = 0;
  for (const auto& w : summary) reached += w.reached ? 1 : 0;
  std::cout << (ok ? "converged" : "did not converge") << ": " << reached << "/" << summary.size()
            << " waypoints reached in " << format_number(log.rows.empty() ? 0.0 : log.rows.back().t) << " s\n"
            << "outputs in " << dir.string() << "\n";
  return ok ? kExitOk : kExitNoConvergence;
}

int cmd_eval(const std::string& est_path, const std::string& ref_path, double max_dt, bool align,
             const std::string& out_dir) {
  const TimedTrajectory est = read_trajectory_csv(est_path);
  const TimedTrajectory ref = read_trajectory_csv(ref_path);
  const Association assoc = associate(est, ref, max_dt);
  const ErrorReport rep = error_stats(assoc, est, ref, align);

  std::cout << "pairs: " << rep.count << " (unpaired " << assoc.unpaired << ")\n"
            << "max: " << format_number(rep.max_abs) << "\n"
            << "mean: " << format_number(rep.mean) << "\n"
            << "rmse: " << format_number(rep.rmse) << "\n";

  const fs::path dir = out_dir.empty() ? fs::path(".") : fs::path(out_dir);
  fs::create_directories(dir);
  std::ofstream csv(dir / "errors.csv", std::ios::binary);
  if (!csv) throw InvalidInputError("cannot write " + (dir / "errors.csv").string());
  csv << "t,ex,ey,ez,norm\n";
  for (const AxisError& e : rep.per_axis) {
    csv << format_number(e.t) << ',' << format_number(e.error.x()) << ',' << format_number(e.error.y()) << ','
        << format_number(e.error.z()) << ',' << format_number(e.error.norm()) << '\n';
  }
  write_svg(dir / "errors.svg", error_panels(rep));
  return kExitOk;
}

int cmd_batch(const std::string& config_path, int starts, int jobs) {
  if (starts < 1) throw InvalidInputError("--starts must be at least 1");
  if (jobs < 1) throw InvalidInputError("--jobs must be at least 1");
  const ScenarioConfig cfg = load_scenario(config_path);
  const fs::path dir = output_dir(cfg);
  const std::vector<BatchRun> runs = run_batch(cfg, starts, jobs);

  std::ofstream summary(dir / "batch_summary.csv", std::ios::binary);
  std::ofstream series(dir / "convergence.csv", std::ios::binary);
  if (!summary || !series) throw InvalidInputError("cannot write batch outputs in " + dir.string());
  summary << "run,start_x,start_y,start_yaw_rad,converged,end_t,final_d_e,final_psi_e_abs\n";
  series << "run,t,x,y,yaw_rad,mode,d_e,psi_e_abs,psi_e\n";

  std::vector<PlotSeries> paths, dists, yaws;
  const auto divider = static_cast<std::size_t>(cfg.sim.slow_divider);
  int ok = 0;
  for (const BatchRun& run : runs) {
    ok += run.converged ? 1 : 0;
    const LogRow& last = run.log.rows.back();
    summary << run.index << ',' << format_number(run.start.x) << ',' << format_number(run.start.y) << ','
            << format_number(run.start.yaw) << ',' << int(run.converged) << ',' << format_number(last.t) << ','
            << format_number(last.errors.distance) << ',' << format_number(last.errors.yaw_abs) << '\n';

    const std::string colour = palette_color(static_cast<std::size_t>(run.index));
    const std::string label = "run " + std::to_string(run.index);
    PlotSeries p{label, colour, {}, {}, false}, d{label, colour, {}, {}, false}, y{label, colour, {}, {}, false};
    for (std::size_t i = 0; i < run.log.rows.size(); ++i) {
      if (i % divider != 0 && i + 1 != run.log.rows.size()) continue;
      const LogRow& r = run.log.rows[i];
      series << run.index << ',' << format_number(r.t) << ',' << format_number(r.pose.x) << ','
             << format_number(r.pose.y) << ',' << format_number(r.pose.yaw) << ',' << static_cast<int>(r.mode)
             << ',' << format_number(r.errors.distance) << ',' << format_number(r.errors.yaw_abs) << ','
             << format_number(r.errors.yaw) << '\n';
      p.x.push_back(r.pose.x);
      p.y.push_back(r.pose.y);
      d.x.push_back(r.t);
      d.y.push_back(r.errors.distance);
      y.x.push_back(r.t);
      y.y.push_back(rad2deg(r.errors.yaw_abs));
    }
    paths.push_back(std::move(p));
    dists.push_back(std::move(d));
    yaws.push_back(std::move(y));
  }
  const Waypoint& wp = cfg.sim.waypoints.front();
  paths.push_back({"waypoint", "#000000", {wp.position.x()}, {wp.position.y()}, true});
  write_svg(dir / "convergence.svg", {{"Trajectories", "x [m]", "y [m]", paths, {}, true},
                                      {"Distance error", "t [s]", "d_e [m]", dists, {}, false},
                                      {"Absolute yaw error", "t [s]", "[deg]", yaws, {}, false}});

  std::cout << ok << "/" << runs.size() << " runs converged\noutputs in " << dir.string() << "\n";
  return ok == static_cast<int>(runs.size()) ? kExitOk : kExitNoConvergence;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Waypoint tracking for a sidewinding snake robot"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run one scenario and write its trajectory, status, summary and plot");
  run->add_option("config", config_path, "Scenario file")->required();

  std::string est_path, ref_path, eval_out;
  double max_dt = 0.02;
  bool align = false;
  auto* eval = app.add_subcommand("eval", "Compare an estimated trajectory against a reference");
  eval->add_option("estimate", est_path, "Estimate CSV (t, x, y[, z])")->required();
  eval->add_option("reference", ref_path, "Reference CSV (t, x, y[, z])")->required();
  eval->add_option("--max-dt", max_dt, "Largest timestamp gap for a pair [s]")->capture_default_str();
  eval->add_flag("--align", align, "Rigidly align the estimate to the reference first");
  eval->add_option("--out", eval_out, "Directory for errors.csv and errors.svg (default: current)");

  int starts = 0;
  int jobs = 1;
  auto* batch = app.add_subcommand("batch", "Single-waypoint convergence study from N seeded starts");
  batch->add_option("config", config_path, "Scenario file")->required();
  batch->add_option("--starts", starts, "Number of start poses")->required();
  batch->add_option("--jobs", jobs, "Worker threads")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*run) return cmd_run(config_path);
    if (*eval) return cmd_eval(est_path, ref_path, max_dt, align, eval_out);
    if (*batch) return cmd_batch(config_path, starts, jobs);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
