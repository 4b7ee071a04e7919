#include "serpent/cpg.hpp"

#include "serpent/errors.hpp"

#include <algorithm>
#include <cmath>

namespace serpent {

PhaseDiffVector GaitParams::phase_differences() const {
  return phase.tail<kNumJoints - 1>() - phase.head<kNumJoints - 1>();
}

void GaitParams::validate() const {
  if (!frequency.allFinite() || !phase.allFinite() || !amplitude.allFinite() || !bias.allFinite()) {
    throw InvalidInputError("gait '" + name + "' has non-finite parameters");
  }
  for (int i = 0; i < kNumJoints; ++i) {
    if (amplitude[i] < 0.0 || amplitude[i] > deg2rad(70.0) + 1e-12) {
      throw InvalidInputError("gait '" + name + "' amplitude of joint " + std::to_string(i + 1) +
                              " outside [0, 70] deg");
    }
  }
}

CpgState CpgState::initial(const GaitParams& gait) {
  CpgState s;
  s.theta = gait.phase;
  return s;
}

void CpgConfig::validate() const {
  if (!(mu > 0.0) || !(gamma > 0.0)) throw ConfigError("cpg mu and gamma must be positive");
  if (!(dt > 0.0) || dt > 0.01 + 1e-15) throw ConfigError("cpg dt must lie in (0, 0.01] s");
  if (bias_slew_time < 0.0) throw ConfigError("cpg bias slew time must be non-negative");
}

namespace {

CouplingMatrices build_coupling(CpgCoupling coupling) {
  CouplingMatrices out;
  out.a.setZero();
  out.b.setZero();
  if (coupling == CpgCoupling::kHeadLed) {
    // theta_i' = mu * (theta_{i-1} + dphi_{i-1} - theta_i); the head runs free.
    for (int i = 1; i < kNumJoints; ++i) {
      out.a(i, i) = -1.0;
      out.a(i, i - 1) = 1.0;
      out.b(i, i - 1) = -1.0;
    }
    return out;
  }
  for (int i = 0; i < kNumJoints; ++i) {
    out.a(i, i) = (i == 0 || i == kNumJoints - 1) ? -1.0 : -2.0;
    if (i > 0) out.a(i, i - 1) = 1.0;
    if (i + 1 < kNumJoints) out.a(i, i + 1) = 1.0;
  }
  for (int j = 0; j < kNumJoints - 1; ++j) {
    out.b(j, j) = 1.0;
    out.b(j + 1, j) = -1.0;
  }
  return out;
}

}  // namespace

const CouplingMatrices& coupling_matrices(CpgCoupling coupling) {
  static const CouplingMatrices head_led = build_coupling(CpgCoupling::kHeadLed);
  static const CouplingMatrices symmetric = build_coupling(CpgCoupling::kSymmetric);
  return coupling == CpgCoupling::kHeadLed ? head_led : symmetric;
}

namespace {

struct Derivative {
  JointVector theta_dot;
  JointVector r_dot;
  JointVector r_ddot;
};

Derivative derivative(const JointVector& theta, const JointVector& r, const JointVector& r_dot,
                      const GaitParams& gait, const PhaseDiffVector& dphi, const CpgConfig& cfg) {
  const auto& m = coupling_matrices(cfg.coupling);
  const double g2 = cfg.gamma * cfg.gamma;
  Derivative d;
  d.theta_dot = cfg.mu * (m.a * theta - m.b * dphi) + gait.frequency;
  d.r_dot = r_dot;
  d.r_ddot = g2 * (gait.amplitude - r) - 2.0 * cfg.gamma * r_dot;
  return d;
}

void check_finite(const CpgState& s, const char* what) {
  for (int i = 0; i < kNumJoints; ++i) {
    if (!std::isfinite(s.theta[i])) throw IntegrationError(std::string(what) + ": theta", i);
  }
  for (int i = 0; i < kNumJoints; ++i) {
    if (!std::isfinite(s.r[i])) throw IntegrationError(std::string(what) + ": r", kNumJoints + i);
  }
  for (int i = 0; i < kNumJoints; ++i) {
    if (!std::isfinite(s.r_dot[i])) {
      throw IntegrationError(std::string(what) + ": r_dot", 2 * kNumJoints + i);
    }
  }
}

}  // namespace

CpgState step(const CpgState& state, const GaitParams& gait, const CpgConfig& cfg) {
  check_finite(state, "non-finite CPG state");
  const PhaseDiffVector dphi = gait.phase_differences();
  const double h = cfg.dt;

  const Derivative k1 = derivative(state.theta, state.r, state.r_dot, gait, dphi, cfg);
  const Derivative k2 = derivative(state.theta + 0.5 * h * k1.theta_dot, state.r + 0.5 * h * k1.r_dot,
                                   state.r_dot + 0.5 * h * k1.r_ddot, gait, dphi, cfg);
  const Derivative k3 = derivative(state.theta + 0.5 * h * k2.theta_dot, state.r + 0.5 * h * k2.r_dot,
                                   state.r_dot + 0.5 * h * k2.r_ddot, gait, dphi, cfg);
  const Derivative k4 = derivative(state.theta + h * k3.theta_dot, state.r + h * k3.r_dot,
                                   state.r_dot + h * k3.r_ddot, gait, dphi, cfg);

  CpgState next;
  next.theta = state.theta + h / 6.0 * (k1.theta_dot + 2.0 * k2.theta_dot + 2.0 * k3.theta_dot + k4.theta_dot);
  next.r = state.r + h / 6.0 * (k1.r_dot + 2.0 * k2.r_dot + 2.0 * k3.r_dot + k4.r_dot);
  next.r_dot = state.r_dot + h / 6.0 * (k1.r_ddot + 2.0 * k2.r_ddot + 2.0 * k3.r_ddot + k4.r_ddot);
  check_finite(next, "CPG integration diverged");
  return next;
}

JointVector joint_commands(const CpgState& state, const JointVector& bias) {
  return state.r.array() * state.theta.array().sin() + bias.array();
}

CpgNetwork::CpgNetwork(const GaitParams& gait, const CpgConfig& cfg)
    : CpgNetwork(CpgState::initial(gait), gait, cfg) {}

CpgNetwork::CpgNetwork(const CpgState& state, const GaitParams& gait, const CpgConfig& cfg)
    : state_(state), gait_(gait), cfg_(cfg), bias_from_(gait.bias) {
  gait_.validate();
  cfg_.validate();
  bias_elapsed_ = cfg_.bias_slew_time;
}

void CpgNetwork::retarget(const GaitParams& gait) {
  gait.validate();
  if (gait.bias != gait_.bias) {
    bias_from_ = current_bias();
    bias_elapsed_ = 0.0;
  }
  gait_ = gait;
}

JointVector CpgNetwork::current_bias() const {
  if (cfg_.bias_slew_time <= 0.0 || bias_elapsed_ >= cfg_.bias_slew_time) return gait_.bias;
  const double f = bias_elapsed_ / cfg_.bias_slew_time;
  return bias_from_ + f * (gait_.bias - bias_from_);
}

JointVector CpgNetwork::tick() {
  state_ = step(state_, gait_, cfg_);
  bias_elapsed_ = std::min(bias_elapsed_ + cfg_.dt, std::max(cfg_.bias_slew_time, 0.0));
  return commands();
}

}  // namespace serpent
