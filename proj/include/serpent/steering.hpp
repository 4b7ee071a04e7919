#pragma once

#include "serpent/types.hpp"

namespace serpent {

enum class AmplitudeClamp {
  kAlgorithm,  // symmetric +-algorithm_clamp
  kHardware,   // [amplitude_min, amplitude_max]
};

struct SteeringConfig {
  /// Weights for J2, J4, J6, J8, J10 (anterior to posterior).
  HorizontalVector alpha = (HorizontalVector() << 2.0, 1.0, 0.0, -1.0, -2.0).finished();
  double delta_offset = 0.0;
  double delta_limit = deg2rad(7.0);
  double amplitude_min = deg2rad(5.0);
  double amplitude_max = deg2rad(50.0);
  double algorithm_clamp = deg2rad(70.0);
  AmplitudeClamp clamp_mode = AmplitudeClamp::kAlgorithm;
  // Surrogate turning-rate model; not measured values.
  double k_turn = 1.0;
  double postural_length = 0.5;
  /// Calibration gain; the default L/k_turn cancels a drift exactly under
  /// the linear rate model.
  double k_bias = 0.5;

  void validate() const;
};

/// a_i + alpha_i * delta + delta_offset on the yawing joints, clamped.
/// Pitch joints pass through untouched.
JointVector modify_amplitudes(const JointVector& nominal, double delta, const SteeringConfig& cfg);

/// The amplitude clamp used by modify_amplitudes, applied to yawing joints.
JointVector clamp_amplitudes(const JointVector& amplitudes, const SteeringConfig& cfg);

double clamp_steering(double delta_raw, const SteeringConfig& cfg);

/// k_turn * delta / L_postural. Throws ConfigError for L_postural <= 0.
double turning_rate(double delta, const SteeringConfig& cfg);

/// -K_bias * <drift rate>.
double bias_from_drift(double mean_drift_rate, const SteeringConfig& cfg);

}  // namespace serpent
