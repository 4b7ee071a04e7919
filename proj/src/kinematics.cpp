#include "serpent/kinematics.hpp"

#include "serpent/errors.hpp"

#include <cmath>
#include <numeric>

namespace serpent {

RigidTransform RigidTransform::from_translation(const Eigen::Vector3d& t) {
  RigidTransform out;
  out.translation = t;
  return out;
}

RigidTransform RigidTransform::from_rotation(const Eigen::Matrix3d& r) {
  RigidTransform out;
  out.rotation = r;
  return out;
}

RigidTransform RigidTransform::rot_x(double angle) {
  return from_rotation(Eigen::AngleAxisd(angle, Eigen::Vector3d::UnitX()).toRotationMatrix());
}

RigidTransform RigidTransform::rot_z(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Eigen::Matrix3d r;
  r << c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0;
  return from_rotation(r);
}

RigidTransform RigidTransform::operator*(const RigidTransform& rhs) const {
  RigidTransform out;
  out.rotation = rotation * rhs.rotation;
  out.translation = rotation * rhs.translation + translation;
  return out;
}

Eigen::Vector3d RigidTransform::operator*(const Eigen::Vector3d& point) const {
  return rotation * point + translation;
}

RigidTransform RigidTransform::inverse() const {
  RigidTransform out;
  out.rotation = rotation.transpose();
  out.translation = -(out.rotation * translation);
  return out;
}

Eigen::Matrix4d RigidTransform::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Identity();
  m.topLeftCorner<3, 3>() = rotation;
  m.topRightCorner<3, 1>() = translation;
  return m;
}

bool RigidTransform::is_valid(double tol) const {
  const double ortho = (rotation.transpose() * rotation - Eigen::Matrix3d::Identity()).norm();
  return ortho < tol && std::abs(rotation.determinant() - 1.0) < tol && translation.allFinite();
}

namespace {

constexpr double kQuaternionIngestTolerance = 1e-3;
constexpr double kQuaternionUnitTolerance = 1e-6;

void validate_joints(const JointVector& joints) {
  for (int i = 0; i < kNumJoints; ++i) {
    if (!std::isfinite(joints[i])) {
      throw InvalidInputError("joint angle " + std::to_string(i + 1) + " is not finite");
    }
    if (std::abs(joints[i]) > kMaxJointAngle + 1e-12) {
      throw InvalidInputError("joint angle " + std::to_string(i + 1) + " exceeds 70 degrees");
    }
  }
}

}  // namespace

RobotState RobotState::from_quaternion(const Eigen::Vector3d& position, const Eigen::Vector4d& xyzw,
                                       const JointVector& joints) {
  if (!xyzw.allFinite() || !position.allFinite()) {
    throw InvalidInputError("base pose is not finite");
  }
  const double norm = xyzw.norm();
  if (std::abs(norm - 1.0) > kQuaternionIngestTolerance) {
    throw InvalidInputError("base quaternion norm " + std::to_string(norm) + " is not unit");
  }
  RobotState s;
  s.base_position = position;
  s.base_orientation = Eigen::Quaterniond(xyzw[3], xyzw[0], xyzw[1], xyzw[2]).normalized();
  s.joint_angles = joints;
  s.validate();
  return s;
}

RobotState RobotState::from_euler_xyz(const Eigen::Vector3d& position, const Eigen::Vector3d& euler,
                                      const JointVector& joints) {
  if (!euler.allFinite()) {
    throw InvalidInputError("base Euler angles are not finite");
  }
  const Eigen::Quaterniond q = Eigen::AngleAxisd(euler.z(), Eigen::Vector3d::UnitZ()) *
                               Eigen::AngleAxisd(euler.y(), Eigen::Vector3d::UnitY()) *
                               Eigen::AngleAxisd(euler.x(), Eigen::Vector3d::UnitX());
  return from_quaternion(position, q.coeffs(), joints);
}

void RobotState::validate() const {
  if (!base_position.allFinite() || !base_orientation.coeffs().allFinite()) {
    throw InvalidInputError("base pose is not finite");
  }
  if (std::abs(base_orientation.norm() - 1.0) > kQuaternionUnitTolerance) {
    throw InvalidInputError("base quaternion is not unit norm");
  }
  validate_joints(joint_angles);
}

void KinematicConstants::validate() const {
  if (!(head_length > 0.0) || !(link_length > 0.0)) {
    throw InvalidInputError("link lengths must be positive");
  }
  for (double m : link_masses) {
    if (!(m > 0.0)) throw InvalidInputError("link masses must be positive");
  }
}

LinkPoses forward_kinematics(const RobotState& state, const KinematicConstants& k) {
  state.validate();
  k.validate();

  static const RigidTransform kRxPos = RigidTransform::rot_x(kPi / 2.0);
  static const RigidTransform kRxNeg = RigidTransform::rot_x(-kPi / 2.0);
  const RigidTransform head_hop = RigidTransform::from_translation({-k.head_length, 0.0, 0.0}) * kRxPos;
  const RigidTransform link_shift = RigidTransform::from_translation({-k.link_length, 0.0, 0.0});

  LinkPoses out;
  RigidTransform base;
  base.rotation = state.base_orientation.toRotationMatrix();
  base.translation = state.base_position;

  out.relative[0] = base;
  out.world[0] = base;
  out.relative[1] = head_hop;
  out.world[1] = base * head_hop;

  bool negative = k.first_joint_rotation_negative;
  for (int j = 0; j < kNumJoints; ++j) {
    const RigidTransform& rx = negative ? kRxNeg : kRxPos;
    out.relative[j + 2] = RigidTransform::rot_z(-state.joint_angles[j]) * link_shift * rx;
    out.world[j + 2] = out.world[j + 1] * out.relative[j + 2];
    negative = !negative;
  }
  for (int i = 0; i < kNumFrames; ++i) {
    out.positions.col(i) = out.world[i].translation;
  }
  return out;
}

Eigen::Matrix3d yaw_frame(double yaw) {
  return RigidTransform::rot_z(yaw).rotation;
}

VirtualChassis virtual_chassis(const LinkPoses& poses, double last_valid_yaw) {
  Eigen::Vector3d mean_x = Eigen::Vector3d::Zero();
  for (const auto& frame : poses.world) {
    mean_x += frame.rotation.col(0);
  }
  mean_x /= static_cast<double>(kNumFrames);

  const Eigen::Vector3d z = Eigen::Vector3d::UnitZ();
  const Eigen::Vector3d horizontal = mean_x - mean_x.dot(z) * z;
  const double norm = horizontal.norm();
  if (!(norm > 1e-8)) {
    throw DegenerateHeadingError(last_valid_yaw);
  }

  VirtualChassis vc;
  vc.x_axis = horizontal / norm;
  vc.x_axis.z() = 0.0;
  const Eigen::Vector3d y_axis = z.cross(vc.x_axis);
  vc.rotation.col(0) = vc.x_axis;
  vc.rotation.col(1) = y_axis;
  vc.rotation.col(2) = z;
  vc.yaw = std::atan2(vc.rotation(1, 0), vc.rotation(0, 0));
  return vc;
}

Eigen::Vector3d center_of_mass(const LinkPoses& poses, const KinematicConstants& k) {
  k.validate();
  const double total = std::accumulate(k.link_masses.begin(), k.link_masses.end(), 0.0);
  const double inv_total = 1.0 / total;
  Eigen::Vector3d weighted = Eigen::Vector3d::Zero();
  for (int i = 0; i < kNumFrames; ++i) {
    weighted += k.link_masses[static_cast<std::size_t>(i)] * poses.positions.col(i);
  }
  return weighted * inv_total;
}

Eigen::Vector3d bounding_box(const LinkPoses& poses, const Eigen::Vector3d& com,
                             const Eigen::Matrix3d& vc_rotation) {
  const Eigen::Matrix<double, 3, kNumFrames> body =
      vc_rotation.transpose() * (poses.positions.colwise() - com);
  const Eigen::Vector3d half_extent = 0.5 * (body.rowwise().maxCoeff() - body.rowwise().minCoeff());
  return (2.0 * half_extent).array() + kBoundingBoxPadding;
}

ReducedState reduce(const LinkPoses& poses, const KinematicConstants& k, double last_valid_yaw) {
  ReducedState out;
  out.com_position = center_of_mass(poses, k);
  try {
    const VirtualChassis vc = virtual_chassis(poses, last_valid_yaw);
    out.vc_rotation = vc.rotation;
    out.yaw = vc.yaw;
  } catch (const DegenerateHeadingError& e) {
    out.yaw = e.last_valid_yaw();
    out.vc_rotation = yaw_frame(out.yaw);
    out.heading_degenerate = true;
  }
  out.bbox_span = bounding_box(poses, out.com_position, out.vc_rotation);
  return out;
}

}  // namespace serpent
