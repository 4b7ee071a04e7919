#include "serpent/steering.hpp"

#include "serpent/errors.hpp"

#include <algorithm>

namespace serpent {

void SteeringConfig::validate() const {
  if (!alpha.allFinite()) throw ConfigError("steering alpha must be finite");
  if (!(delta_limit >= 0.0)) throw ConfigError("steering delta_limit must be non-negative");
  if (!(amplitude_min <= amplitude_max)) throw ConfigError("steering amplitude_min exceeds amplitude_max");
  if (!(algorithm_clamp >= 0.0)) throw ConfigError("steering algorithm_clamp must be non-negative");
  if (!(postural_length > 0.0)) throw ConfigError("steering postural_length must be positive");
}

JointVector clamp_amplitudes(const JointVector& amplitudes, const SteeringConfig& cfg) {
  const double lo = cfg.clamp_mode == AmplitudeClamp::kAlgorithm ? -cfg.algorithm_clamp : cfg.amplitude_min;
  const double hi = cfg.clamp_mode == AmplitudeClamp::kAlgorithm ? cfg.algorithm_clamp : cfg.amplitude_max;
  JointVector out = amplitudes;
  for (int k = 0; k < kNumHorizontalJoints; ++k) {
    const int j = horizontal_joint_index(k);
    out[j] = std::clamp(out[j], lo, hi);
  }
  return out;
}

JointVector modify_amplitudes(const JointVector& nominal, double delta, const SteeringConfig& cfg) {
  JointVector out = nominal;
  for (int k = 0; k < kNumHorizontalJoints; ++k) {
    const int j = horizontal_joint_index(k);
    out[j] = nominal[j] + cfg.alpha[k] * delta + cfg.delta_offset;
  }
  return clamp_amplitudes(out, cfg);
}

double clamp_steering(double delta_raw, const SteeringConfig& cfg) {
  return std::clamp(delta_raw, -cfg.delta_limit, cfg.delta_limit);
}

double turning_rate(double delta, const SteeringConfig& cfg) {
  if (!(cfg.postural_length > 0.0)) throw ConfigError("postural length must be positive");
  return cfg.k_turn * delta / cfg.postural_length;
}

double bias_from_drift(double mean_drift_rate, const SteeringConfig& cfg) {
  return -cfg.k_bias * mean_drift_rate;
}

}  // namespace serpent
