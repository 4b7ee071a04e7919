#include "serpent/scenario_config.hpp"

#include "serpent/errors.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

namespace serpent {
namespace {

struct Entry {
  std::string section;
  std::string key;
  std::string value;
  int line = 0;
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source) {}

  [[noreturn]] void fail(int line, const std::string& msg) const {
    throw ConfigError(source_ + ":" + std::to_string(line) + ": " + msg);
  }

  std::vector<Entry> tokenize(std::string_view text) const {
    std::vector<Entry> out;
    std::set<std::pair<std::string, std::string>> seen;
    std::string section;
    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      const auto nl = text.find('\n', pos);
      std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
      pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
      ++line_no;
      if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "malformed section header");
        section = std::string(trim(line.substr(1, line.size() - 2)));
        if (section.empty()) fail(line_no, "empty section name");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) fail(line_no, "expected 'key = value'");
      Entry e{section, std::string(trim(line.substr(0, eq))), std::string(trim(line.substr(eq + 1))), line_no};
      if (e.key.empty()) fail(line_no, "missing key");
      if (e.value.empty()) fail(line_no, "missing value for '" + e.key + "'");
      if (!seen.emplace(e.section, e.key).second) {
        fail(line_no, "duplicate key '" + qualified(e) + "'");
      }
      out.push_back(std::move(e));
    }
    return out;
  }

  static std::string qualified(const Entry& e) { return e.section.empty() ? e.key : e.section + "." + e.key; }

  double number(const Entry& e, std::string_view text) const {
    text = trim(text);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
      fail(e.line, "'" + qualified(e) + "': not a number: '" + std::string(text) + "'");
    }
    if (!std::isfinite(v)) fail(e.line, "'" + qualified(e) + "': value must be finite");
    return v;
  }

  double number(const Entry& e) const { return number(e, e.value); }

  std::vector<std::string> fields(const Entry& e) const {
    std::vector<std::string> out;
    std::string_view rest = e.value;
    while (true) {
      const auto comma = rest.find(',');
      out.emplace_back(trim(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    return out;
  }

  std::vector<double> numbers(const Entry& e) const {
    std::vector<double> out;
    for (const std::string& f : fields(e)) out.push_back(number(e, f));
    return out;
  }

  bool boolean(const Entry& e) const {
    if (e.value == "true" || e.value == "1" || e.value == "yes" || e.value == "on") return true;
    if (e.value == "false" || e.value == "0" || e.value == "no" || e.value == "off") return false;
    fail(e.line, "'" + qualified(e) + "': expected true or false");
  }

  /// Scalar broadcast to all joints, or exactly one value per joint.
  JointVector joints(const Entry& e, double scale) const {
    const std::vector<double> v = numbers(e);
    JointVector out;
    if (v.size() == 1) {
      out.setConstant(v[0] * scale);
    } else if (v.size() == static_cast<std::size_t>(kNumJoints)) {
      for (int i = 0; i < kNumJoints; ++i) out(i) = v[static_cast<std::size_t>(i)] * scale;
    } else {
      fail(e.line, "'" + qualified(e) + "': expected 1 or " + std::to_string(kNumJoints) + " values");
    }
    return out;
  }

 private:
  std::string source_;
};

using Handler = std::function<void(const Entry&)>;

}  // namespace

ScenarioConfig parse_scenario(std::string_view text, std::string_view source) {
  const Parser p(source);
  const std::vector<Entry> entries = p.tokenize(text);

  ScenarioConfig cfg;
  SimConfig& sim = cfg.sim;
  GaitPresetConfig presets;

  auto num = [&](double& field, double scale = 1.0) { return [&p, &field, scale](const Entry& e) { field = p.number(e) * scale; }; };
  auto deg = [&](double& field) { return num(field, deg2rad(1.0)); };
  auto flag = [&](bool& field) { return [&p, &field](const Entry& e) { field = p.boolean(e); }; };

  std::map<std::string, std::map<std::string, Handler>> table;
  table[""] = {
      {"duration", num(sim.duration)},
      {"stop_radius", num(sim.stop_radius)},
      {"seed",
       [&](const Entry& e) {
         const double v = p.number(e);
         if (v < 0.0 || v != std::floor(v)) p.fail(e.line, "'seed' must be a non-negative integer");
         cfg.seed = static_cast<std::uint64_t>(v);
       }},
      {"output_dir", [&](const Entry& e) { cfg.output_dir = e.value; }},
  };
  table["start"] = {
      {"x", [&](const Entry& e) { sim.start.x = p.number(e); }},
      {"y", [&](const Entry& e) { sim.start.y = p.number(e); }},
      {"yaw_deg", [&](const Entry& e) { sim.start.yaw = deg2rad(p.number(e)); }},
  };
  table["tracker"] = {
      {"d_threshold", num(sim.tracker.d_threshold)},
      {"yaw_threshold_waypoint_deg", deg(sim.tracker.yaw_threshold_waypoint)},
      {"yaw_threshold_turn_deg", deg(sim.tracker.yaw_threshold_turn)},
      {"delta_base_deg", deg(sim.tracker.delta_base)},
      {"delta_limit_deg", deg(sim.tracker.delta_limit)},
      {"k_p", num(sim.tracker.k_p)},
      {"delta_turn_trigger_deg", deg(sim.tracker.delta_turn_trigger)},
      {"bearing_deadband", num(sim.tracker.bearing_deadband)},
      {"positive_error_turns_left", flag(sim.tracker.positive_error_turns_left)},
      {"blend_breakpoints",
       [&](const Entry& e) {
         const auto v = p.numbers(e);
         if (v.size() != 4) p.fail(e.line, "'tracker.blend_breakpoints' expects 4 distances");
         sim.tracker.blend = {v[0], v[1], v[2], v[3], sim.tracker.blend.plateau};
       }},
      {"blend_plateau", num(sim.tracker.blend.plateau)},
  };
  table["steering"] = {
      {"alpha",
       [&](const Entry& e) {
         const auto v = p.numbers(e);
         if (v.size() != static_cast<std::size_t>(kNumHorizontalJoints)) {
           p.fail(e.line, "'steering.alpha' expects " + std::to_string(kNumHorizontalJoints) + " weights");
         }
         for (int i = 0; i < kNumHorizontalJoints; ++i) sim.steering.alpha(i) = v[static_cast<std::size_t>(i)];
       }},
      {"delta_offset_deg", deg(sim.steering.delta_offset)},
      {"delta_limit_deg", deg(sim.steering.delta_limit)},
      {"amplitude_min_deg", deg(sim.steering.amplitude_min)},
      {"amplitude_max_deg", deg(sim.steering.amplitude_max)},
      {"algorithm_clamp_deg", deg(sim.steering.algorithm_clamp)},
      {"clamp_mode",
       [&](const Entry& e) {
         if (e.value == "algorithm") {
           sim.steering.clamp_mode = AmplitudeClamp::kAlgorithm;
         } else if (e.value == "hardware") {
           sim.steering.clamp_mode = AmplitudeClamp::kHardware;
         } else {
           p.fail(e.line, "'steering.clamp_mode' must be 'algorithm' or 'hardware'");
         }
       }},
      {"k_turn", num(sim.steering.k_turn)},
      {"postural_length", num(sim.steering.postural_length)},
      {"k_bias", num(sim.steering.k_bias)},
  };
  table["plant"] = {
      {"v_sidewind", num(sim.plant.v_sidewind)},
      {"crab_angle_deg", deg(sim.plant.crab_angle)},
      {"omega_turn_deg_s", deg(sim.plant.omega_turn)},
      {"k_turn", num(sim.plant.k_turn)},
      {"postural_length", num(sim.plant.postural_length)},
      {"drift_rate_deg_s", deg(sim.plant.drift_rate)},
      {"noise_position_std", num(sim.plant.noise_position_std)},
      {"noise_yaw_std_deg", deg(sim.plant.noise_yaw_std)},
  };
  table["cpg"] = {
      {"mu", num(sim.cpg.mu)},
      {"gamma", num(sim.cpg.gamma)},
      {"dt", num(sim.cpg.dt)},
      {"bias_slew_time", num(sim.cpg.bias_slew_time)},
      {"coupling",
       [&](const Entry& e) {
         if (e.value == "head_led") {
           sim.cpg.coupling = CpgCoupling::kHeadLed;
         } else if (e.value == "symmetric") {
           sim.cpg.coupling = CpgCoupling::kSymmetric;
         } else {
           p.fail(e.line, "'cpg.coupling' must be 'head_led' or 'symmetric'");
         }
       }},
  };
  table["sim"] = {
      {"slow_divider",
       [&](const Entry& e) {
         const double v = p.number(e);
         if (v < 1.0 || v != std::floor(v)) p.fail(e.line, "'sim.slow_divider' must be a positive integer");
         sim.slow_divider = static_cast<int>(v);
       }},
      {"yaw_filter", flag(sim.yaw_filter)},
      {"staleness_timeout", num(sim.staleness_timeout)},
      {"calibrate_drift", flag(sim.calibrate_drift)},
      {"calibration_time", num(sim.calibration_time)},
  };
  table["gaits"] = {
      {"frequency_hz", num(presets.frequency, 2.0 * kPi)},
      {"sidewind_pitch_amplitude_deg", deg(presets.sidewind_pitch_amplitude)},
      {"sidewind_yaw_amplitude_deg", deg(presets.sidewind_yaw_amplitude)},
      {"turn_pitch_amplitude_deg", deg(presets.turn_pitch_amplitude)},
      {"turn_yaw_amplitude_deg", deg(presets.turn_yaw_amplitude)},
      {"phase_gradient_deg", deg(presets.phase_gradient)},
      {"pitch_yaw_offset_deg", deg(presets.pitch_yaw_offset)},
  };
  table["batch"] = {
      {"inner_radius", num(cfg.batch.inner_radius)},
      {"outer_radius", num(cfg.batch.outer_radius)},
      {"arc_half_angle_deg", deg(cfg.batch.arc_half_angle)},
  };

  std::vector<std::pair<std::string, Waypoint>> waypoints;
  std::vector<const Entry*> gait_entries;

  for (const Entry& e : entries) {
    if (e.section == "waypoints") {
      const auto v = p.numbers(e);
      if (v.size() != 3) p.fail(e.line, "waypoint '" + e.key + "' expects x, y, yaw_deg");
      waypoints.push_back({e.key, Waypoint{{v[0], v[1]}, deg2rad(v[2])}});
      continue;
    }
    if (e.section == "disturbances") {
      const auto f = p.fields(e);
      if (f.size() < 2) p.fail(e.line, "disturbance '" + e.key + "' expects time, kind, parameters");
      DisturbanceEvent ev;
      ev.time = p.number(e, f[0]);
      if (f[1] == "jump" && f.size() == 4) {
        ev.kind = PositionJump{{p.number(e, f[2]), p.number(e, f[3])}};
      } else if (f[1] == "twist" && f.size() == 3) {
        ev.kind = YawTwist{deg2rad(p.number(e, f[2]))};
      } else if (f[1] == "dropout" && f.size() == 3) {
        ev.kind = PoseDropout{p.number(e, f[2])};
      } else {
        p.fail(e.line, "disturbance '" + e.key + "': expected 'jump, dx, dy', 'twist, deg' or 'dropout, seconds'");
      }
      if (ev.time < 0.0) p.fail(e.line, "disturbance '" + e.key + "': time must be non-negative");
      sim.disturbances.push_back(ev);
      continue;
    }
    if (e.section.rfind("gait.", 0) == 0) {
      gait_entries.push_back(&e);
      continue;
    }
    const auto sec = table.find(e.section);
    if (sec == table.end()) p.fail(e.line, "unknown section '" + e.section + "'");
    const auto h = sec->second.find(e.key);
    if (h == sec->second.end()) p.fail(e.line, "unknown key '" + Parser::qualified(e) + "'");
    h->second(e);
  }

  sim.gaits = GaitLibrary::from_presets(presets);
  for (const Entry* e : gait_entries) {
    const std::string name = e->section.substr(5);
    GaitParams* g = name == "sidewind"     ? &sim.gaits.sidewind
                    : name == "turn_left"  ? &sim.gaits.turn_left
                    : name == "turn_right" ? &sim.gaits.turn_right
                                           : nullptr;
    if (g == nullptr) p.fail(e->line, "unknown gait '" + name + "' (sidewind, turn_left, turn_right)");
    if (e->key == "frequency_hz") {
      g->frequency = p.joints(*e, 2.0 * kPi);
    } else if (e->key == "phase_deg") {
      g->phase = p.joints(*e, deg2rad(1.0));
    } else if (e->key == "amplitude_deg") {
      g->amplitude = p.joints(*e, deg2rad(1.0));
    } else if (e->key == "bias_deg") {
      g->bias = p.joints(*e, deg2rad(1.0));
    } else {
      p.fail(e->line, "unknown key '" + Parser::qualified(*e) + "'");
    }
  }

  for (const auto& [key, wp] : waypoints) sim.waypoints.push_back(wp);
  if (sim.waypoints.empty()) throw ConfigError(std::string(source) + ": no waypoints given");
  sim.plant.seed = cfg.seed;
  try {
    sim.validate();
    sim.gaits.sidewind.validate();
    sim.gaits.turn_left.validate();
    sim.gaits.turn_right.validate();
  } catch (const Error& err) {
    throw ConfigError(std::string(source) + ": " + err.what());
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str(), path);
}

}  // namespace serpent
