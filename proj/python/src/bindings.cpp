#include "serpent/errors.hpp"
#include "serpent/kinematics.hpp"
#include "serpent/metrics.hpp"
#include "serpent/scenario_config.hpp"
#include "serpent/simulator.hpp"
#include "serpent/steering.hpp"
#include "serpent/tracker.hpp"

#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace serpent;

namespace {

py::dict fk(const Eigen::Vector3d& position, const Eigen::Vector4d& quat_xyzw, const JointVector& joints) {
  const LinkPoses poses = forward_kinematics(RobotState::from_quaternion(position, quat_xyzw, joints));
  const ReducedState r = reduce(poses);
  py::list frames;
  for (const RigidTransform& t : poses.world) frames.append(Eigen::Matrix4d(t.matrix()));
  py::dict out;
  out["positions"] = Eigen::MatrixXd(poses.positions.transpose());
  out["frames"] = frames;
  out["com"] = r.com_position;
  out["vc_rotation"] = r.vc_rotation;
  out["bbox_span"] = r.bbox_span;
  return out;
}

py::dict run(const ScenarioConfig& cfg) {
  const TrajectoryLog log = run_scenario(cfg.sim);
  const auto n = static_cast<py::ssize_t>(log.rows.size());
  py::array_t<double> t(n), x(n), y(n), yaw(n), dist(n), yaw_err(n);
  py::array_t<int> mode(n), index(n);
  for (py::ssize_t i = 0; i < n; ++i) {
    const LogRow& r = log.rows[static_cast<std::size_t>(i)];
    t.mutable_at(i) = r.t;
    x.mutable_at(i) = r.pose.x;
    y.mutable_at(i) = r.pose.y;
    yaw.mutable_at(i) = r.pose.yaw;
    dist.mutable_at(i) = r.errors.distance;
    yaw_err.mutable_at(i) = r.errors.yaw;
    mode.mutable_at(i) = static_cast<int>(r.mode);
    index.mutable_at(i) = static_cast<int>(r.waypoint_index);
  }
  py::list waypoints;
  for (const WaypointSummary& w : tracking_summary(log, cfg.sim.waypoints)) {
    py::dict d;
    d["index"] = w.index;
    d["reached"] = w.reached;
    d["time_to_reach"] = w.time_to_reach;
    d["final_distance"] = w.final_distance;
    waypoints.append(d);
  }
  py::dict out;
  out["t"] = t;
  out["x"] = x;
  out["y"] = y;
  out["yaw"] = yaw;
  out["distance"] = dist;
  out["yaw_error"] = yaw_err;
  out["mode"] = mode;
  out["waypoint_index"] = index;
  out["waypoints"] = waypoints;
  out["converged"] = converged(log, cfg.sim);
  out["sawtooth_resets"] = count_sawtooth_resets(log);
  return out;
}

}  // namespace

PYBIND11_MODULE(_serpent, m) {
  m.doc() = "Waypoint tracking for a sidewinding snake robot";

  py::register_exception<Error>(m, "SerpentError", PyExc_ValueError);

  m.def("forward_kinematics", &fk, py::arg("position"), py::arg("quat_xyzw"), py::arg("joints"),
        "Link frames, positions and reduced state for a base pose and 11 joint angles [rad].");

  m.def("blend_weight", [](double d) { return blend_weight(d); }, py::arg("distance"));

  m.def(
      "modify_amplitudes",
      [](const JointVector& nominal, double delta) { return modify_amplitudes(nominal, delta, SteeringConfig{}); },
      py::arg("nominal"), py::arg("delta"));

  m.def(
      "error_stats",
      [](const std::vector<double>& errors) {
        const ErrorReport r = error_stats(errors);
        py::dict d;
        d["max"] = r.max_abs;
        d["mean"] = r.mean;
        d["rmse"] = r.rmse;
        d["count"] = r.count;
        return d;
      },
      py::arg("errors"));

  py::class_<ScenarioConfig>(m, "Scenario")
      .def_property_readonly("duration", [](const ScenarioConfig& c) { return c.sim.duration; })
      .def_property_readonly("seed", [](const ScenarioConfig& c) { return c.seed; })
      .def_property_readonly("waypoints", [](const ScenarioConfig& c) {
        py::list out;
        for (const Waypoint& w : c.sim.waypoints) out.append(py::make_tuple(w.position.x(), w.position.y(), w.yaw));
        return out;
      });

  m.def("load_scenario", &load_scenario, py::arg("path"));
  m.def(
      "parse_scenario", [](const std::string& text) { return parse_scenario(text); }, py::arg("text"));
  m.def("run", &run, py::arg("scenario"), "Simulate a scenario and return its trace as numpy arrays.");
}
