/**
 * @file cpg.hpp
 * @brief Coupled phase/amplitude oscillator network driving the 11 joints.
 *
 * Phase:     theta' = mu * A * theta - mu * B * dphi + omega
 * Amplitude: r''    = gamma^2 * (a_des - r) - 2 * gamma * r'   (critically damped)
 * Output:    q_des  = r .* sin(theta) + b
 *
 * A couples nearest neighbours and B maps the 10 desired neighbour offsets
 * dphi_i = phi_{i+1} - phi_i onto the 11 phases, so that A * theta = B * dphi
 * exactly when the network is phase locked. Two couplings are available:
 *
 *   head-led   each joint follows its anterior neighbour; every offset
 *              error decays at rate mu (default)
 *   symmetric  chain Laplacian; the slowest offset mode decays at only
 *              mu * (2 - 2 cos(pi / 11)) ~ 0.08 mu
 */
#pragma once

#include "serpent/types.hpp"

#include <Eigen/Core>

#include <string>

namespace serpent {

using CouplingA = Eigen::Matrix<double, kNumJoints, kNumJoints>;
using CouplingB = Eigen::Matrix<double, kNumJoints, kNumJoints - 1>;

struct GaitParams {
  JointVector frequency = JointVector::Zero();  // rad/s
  JointVector phase = JointVector::Zero();      // rad
  JointVector amplitude = JointVector::Zero();  // rad
  JointVector bias = JointVector::Zero();       // rad
  std::string name;

  PhaseDiffVector phase_differences() const;
  /// Amplitudes in [0, 70 deg], everything finite.
  void validate() const;
};

struct CpgState {
  JointVector theta = JointVector::Zero();
  JointVector r = JointVector::Zero();
  JointVector r_dot = JointVector::Zero();

  /// theta = phi, r = 0, r_dot = 0.
  static CpgState initial(const GaitParams& gait);
};

enum class CpgCoupling { kHeadLed, kSymmetric };

struct CpgConfig {
  double mu = 10.0;
  double gamma = 20.0;
  double dt = 0.01;
  /// Duration of the linear bias slew applied when a retarget changes b.
  double bias_slew_time = 0.5;
  CpgCoupling coupling = CpgCoupling::kHeadLed;

  void validate() const;
};

struct CouplingMatrices {
  CouplingA a;
  CouplingB b;
};

const CouplingMatrices& coupling_matrices(CpgCoupling coupling = CpgCoupling::kHeadLed);

/// One classical RK4 step of length cfg.dt. Throws IntegrationError on
/// non-finite input or output.
CpgState step(const CpgState& state, const GaitParams& gait, const CpgConfig& cfg);

JointVector joint_commands(const CpgState& state, const JointVector& bias);
inline JointVector joint_commands(const CpgState& state, const GaitParams& gait) {
  return joint_commands(state, gait.bias);
}

/// Owns a CPG state and its active gait. Retargeting swaps the parameter
/// vectors while the oscillator state carries over; bias changes are slewed
/// linearly over CpgConfig::bias_slew_time.
class CpgNetwork {
 public:
  CpgNetwork(const GaitParams& gait, const CpgConfig& cfg);
  CpgNetwork(const CpgState& state, const GaitParams& gait, const CpgConfig& cfg);

  void retarget(const GaitParams& gait);
  /// Advances one dt and returns the new joint commands.
  JointVector tick();

  const CpgState& state() const { return state_; }
  const GaitParams& gait() const { return gait_; }
  const CpgConfig& config() const { return cfg_; }
  JointVector current_bias() const;
  JointVector commands() const { return joint_commands(state_, current_bias()); }

 private:
  CpgState state_;
  GaitParams gait_;
  CpgConfig cfg_;
  JointVector bias_from_;
  double bias_elapsed_ = 0.0;
};

}  // namespace serpent
