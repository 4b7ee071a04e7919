#include "serpent/gaits.hpp"

namespace serpent {

namespace {

GaitParams travelling_wave(const GaitPresetConfig& cfg, double pitch_amp, double yaw_amp,
                           double direction, const char* name) {
  GaitParams g;
  g.name = name;
  g.frequency.setConstant(cfg.frequency);
  for (int i = 0; i < kNumJoints; ++i) {
    const bool pitch = is_pitch_joint(i);
    g.amplitude[i] = pitch ? pitch_amp : yaw_amp;
    g.phase[i] = direction * (cfg.phase_gradient * i + (pitch ? cfg.pitch_yaw_offset : 0.0));
  }
  return g;
}

}  // namespace

GaitParams sidewinding_gait(const GaitPresetConfig& cfg) {
  return travelling_wave(cfg, cfg.sidewind_pitch_amplitude, cfg.sidewind_yaw_amplitude, 1.0,
                         "sidewind");
}

GaitParams turn_left_gait(const GaitPresetConfig& cfg) {
  return travelling_wave(cfg, cfg.turn_pitch_amplitude, cfg.turn_yaw_amplitude, 1.0, "turn_left");
}

GaitParams turn_right_gait(const GaitPresetConfig& cfg) {
  return travelling_wave(cfg, cfg.turn_pitch_amplitude, cfg.turn_yaw_amplitude, -1.0, "turn_right");
}

GaitLibrary GaitLibrary::from_presets(const GaitPresetConfig& cfg) {
  return {sidewinding_gait(cfg), turn_left_gait(cfg), turn_right_gait(cfg)};
}

}  // namespace serpent
