#pragma once

#include "serpent/cpg.hpp"

namespace serpent {

/// Shape parameters of the built-in gait presets (angles in radians).
struct GaitPresetConfig {
  double frequency = 2.0 * kPi * 0.5;        // common omega_0, rad/s
  double sidewind_pitch_amplitude = deg2rad(15.0);
  double sidewind_yaw_amplitude = deg2rad(45.0);
  double turn_pitch_amplitude = deg2rad(15.0);
  double turn_yaw_amplitude = deg2rad(30.0);
  double phase_gradient = deg2rad(60.0);     // per joint, along the body
  double pitch_yaw_offset = deg2rad(90.0);   // vertical wave leads horizontal
};

/// Orthogonal vertical/horizontal travelling waves with a common frequency.
GaitParams sidewinding_gait(const GaitPresetConfig& cfg = {});
/// Turn-in-place presets; right mirrors the phase structure of left.
GaitParams turn_left_gait(const GaitPresetConfig& cfg = {});
GaitParams turn_right_gait(const GaitPresetConfig& cfg = {});

/// The named presets the tracker switches between.
struct GaitLibrary {
  GaitParams sidewind = sidewinding_gait();
  GaitParams turn_left = turn_left_gait();
  GaitParams turn_right = turn_right_gait();

  static GaitLibrary from_presets(const GaitPresetConfig& cfg);
};

}  // namespace serpent
