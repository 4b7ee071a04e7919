#pragma once

#include <Eigen/Core>

#include <numbers>

namespace serpent {

inline constexpr int kNumJoints = 11;
inline constexpr int kNumFrames = 13;          // base + head + 11 body frames
inline constexpr int kNumHorizontalJoints = 5;  // J2, J4, J6, J8, J10

using JointVector = Eigen::Matrix<double, kNumJoints, 1>;
using PhaseDiffVector = Eigen::Matrix<double, kNumJoints - 1, 1>;
using HorizontalVector = Eigen::Matrix<double, kNumHorizontalJoints, 1>;

inline constexpr double kPi = std::numbers::pi;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Zero-based index of the yawing joint J(2k+2), k in [0, 5).
constexpr int horizontal_joint_index(int k) { return 2 * k + 1; }

/// True for the pitching joints J1, J3, ..., J11 (even zero-based index).
constexpr bool is_pitch_joint(int index) { return index % 2 == 0; }

/// Planar pose of the navigation point (CoM) in the world frame.
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double yaw = 0.0;
};

}  // namespace serpent
