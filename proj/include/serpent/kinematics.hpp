/**
 * @file kinematics.hpp
 * @brief Forward kinematics of the pitch-yaw snake chain and its reduced-order state.
 *
 * Frame layout (13 frames): 0 = tracked base, 1 = head, 2..12 = the frames
 * following joints J1..J11 (frame 12 is the tail). Each hop is
 *
 *   T_head  = T_base * Trans(-H, 0, 0) * Rx(+90 deg)
 *   T_{i+1} = T_i * Rz(-q_i) * Trans(-L, 0, 0) * Rx(s_i * 90 deg)
 *
 * with s_i alternating between consecutive joints.
 */
#pragma once

#include "serpent/types.hpp"

#include <Eigen/Geometry>

#include <array>

namespace serpent {

/// SE(3) element stored as rotation + translation.
struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  static RigidTransform identity() { return {}; }
  static RigidTransform from_translation(const Eigen::Vector3d& t);
  static RigidTransform from_rotation(const Eigen::Matrix3d& r);
  static RigidTransform rot_x(double angle);
  static RigidTransform rot_z(double angle);

  RigidTransform operator*(const RigidTransform& rhs) const;
  Eigen::Vector3d operator*(const Eigen::Vector3d& point) const;
  RigidTransform inverse() const;
  Eigen::Matrix4d matrix() const;

  /// ||R^T R - I|| and |det R - 1| both below tol.
  bool is_valid(double tol = 1e-9) const;
};

/// Base pose plus joint angles (X_b).
struct RobotState {
  Eigen::Vector3d base_position = Eigen::Vector3d::Zero();
  Eigen::Quaterniond base_orientation = Eigen::Quaterniond::Identity();
  JointVector joint_angles = JointVector::Zero();

  /// Quaternion given as [qx, qy, qz, qw]. Normalized when within 1e-3 of
  /// unit norm, rejected beyond. Joint angles must be finite and within
  /// the 70 degree hardware clamp.
  static RobotState from_quaternion(const Eigen::Vector3d& position, const Eigen::Vector4d& xyzw,
                                    const JointVector& joints);

  /// Base orientation as XYZ Euler angles (roll, pitch, yaw), composed as
  /// R = Rz(yaw) * Ry(pitch) * Rx(roll).
  static RobotState from_euler_xyz(const Eigen::Vector3d& position, const Eigen::Vector3d& euler,
                                   const JointVector& joints);

  /// Throws InvalidInputError when the invariants do not hold.
  void validate() const;
};

struct KinematicConstants {
  double head_length = 0.1565;
  double link_length = 0.1230;
  std::array<double, kNumFrames> link_masses = {0.25, 0.25, 0.50, 0.50, 0.50, 0.50, 0.50,
                                                0.50, 0.50, 0.50, 0.50, 0.50, 0.50};
  /// Sign of the x rotation after J1; the head hop is always +90 deg.
  bool first_joint_rotation_negative = true;

  void validate() const;
};

struct LinkPoses {
  std::array<RigidTransform, kNumFrames> world;
  /// Pose of frame i relative to frame i-1; entry 0 is the base pose itself.
  std::array<RigidTransform, kNumFrames> relative;
  Eigen::Matrix<double, 3, kNumFrames> positions;
};

struct VirtualChassis {
  Eigen::Vector3d x_axis;
  Eigen::Matrix3d rotation;
  double yaw = 0.0;
};

struct ReducedState {
  Eigen::Vector3d com_position = Eigen::Vector3d::Zero();
  Eigen::Matrix3d vc_rotation = Eigen::Matrix3d::Identity();
  double yaw = 0.0;
  Eigen::Vector3d bbox_span = Eigen::Vector3d::Constant(0.1);
  bool heading_degenerate = false;
};

inline constexpr double kMaxJointAngle = deg2rad(70.0);
inline constexpr double kBoundingBoxPadding = 0.1;

LinkPoses forward_kinematics(const RobotState& state, const KinematicConstants& k = {});

/// Throws DegenerateHeadingError (carrying last_valid_yaw) when the
/// horizontal projection of the mean link x-axis vanishes.
VirtualChassis virtual_chassis(const LinkPoses& poses, double last_valid_yaw = 0.0);

/// Horizontal frame with the given yaw; third column is world z.
Eigen::Matrix3d yaw_frame(double yaw);

Eigen::Vector3d center_of_mass(const LinkPoses& poses, const KinematicConstants& k = {});

Eigen::Vector3d bounding_box(const LinkPoses& poses, const Eigen::Vector3d& com,
                             const Eigen::Matrix3d& vc_rotation);

/// Full reduction. A degenerate heading holds last_valid_yaw instead of throwing.
ReducedState reduce(const LinkPoses& poses, const KinematicConstants& k = {},
                    double last_valid_yaw = 0.0);

}  // namespace serpent
