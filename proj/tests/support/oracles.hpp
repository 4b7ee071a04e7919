// Independent reference implementations the tests compare against. Nothing
// here calls into the library's own transform or integrator code.
#pragma once

#include "serpent/kinematics.hpp"

#include <Eigen/Core>

#include <array>
#include <cmath>
#include <random>

namespace oracle {

using Mat4 = Eigen::Matrix4d;

inline Mat4 translate_x(double a) {
  Mat4 m = Mat4::Identity();
  m(0, 3) = a;
  return m;
}

inline Mat4 rotate_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat4 m = Mat4::Identity();
  m(1, 1) = c;
  m(1, 2) = -s;
  m(2, 1) = s;
  m(2, 2) = c;
  return m;
}

inline Mat4 rotate_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat4 m = Mat4::Identity();
  m(0, 0) = c;
  m(0, 1) = -s;
  m(1, 0) = s;
  m(1, 1) = c;
  return m;
}

// Textbook unit quaternion (w, x, y, z) to rotation matrix.
inline Mat4 from_quaternion(double w, double x, double y, double z, const Eigen::Vector3d& p) {
  Mat4 m = Mat4::Identity();
  m(0, 0) = 1 - 2 * (y * y + z * z);
  m(0, 1) = 2 * (x * y - z * w);
  m(0, 2) = 2 * (x * z + y * w);
  m(1, 0) = 2 * (x * y + z * w);
  m(1, 1) = 1 - 2 * (x * x + z * z);
  m(1, 2) = 2 * (y * z - x * w);
  m(2, 0) = 2 * (x * z - y * w);
  m(2, 1) = 2 * (y * z + x * w);
  m(2, 2) = 1 - 2 * (x * x + y * y);
  m.block<3, 1>(0, 3) = p;
  return m;
}

// Chain of plain 4x4 products, frame by frame.
inline std::array<Mat4, 13> naive_fk(const serpent::RobotState& s, double head = 0.1565, double link = 0.1230,
                                     bool first_negative = true) {
  const auto& q = s.base_orientation;
  std::array<Mat4, 13> out;
  out[0] = from_quaternion(q.w(), q.x(), q.y(), q.z(), s.base_position);
  out[1] = out[0] * translate_x(-head) * rotate_x(M_PI / 2);
  double sign = first_negative ? -1.0 : 1.0;
  for (int j = 0; j < 11; ++j) {
    out[j + 2] = out[j + 1] * rotate_z(-s.joint_angles[j]) * translate_x(-link) * rotate_x(sign * M_PI / 2);
    sign = -sign;
  }
  return out;
}

inline serpent::RobotState random_state(std::mt19937_64& rng, double joint_limit_deg = 70.0) {
  std::uniform_real_distribution<double> pos(-5.0, 5.0);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> joint(-joint_limit_deg, joint_limit_deg);
  Eigen::Vector4d xyzw(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
  xyzw.normalize();
  serpent::JointVector q;
  for (int i = 0; i < 11; ++i) q[i] = joint(rng) * M_PI / 180.0;
  return serpent::RobotState::from_quaternion({pos(rng), pos(rng), pos(rng)}, xyzw, q);
}

inline serpent::RigidTransform random_transform(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> pos(-3.0, 3.0);
  const Eigen::Quaterniond q = Eigen::Quaterniond(gauss(rng), gauss(rng), gauss(rng), gauss(rng)).normalized();
  serpent::RigidTransform g;
  g.rotation = q.toRotationMatrix();
  g.translation = {pos(rng), pos(rng), pos(rng)};
  return g;
}

// Critically damped step response from (r0, 0) towards a.
inline double damped_response(double a, double r0, double gamma, double t) {
  return a + (r0 - a) * (1.0 + gamma * t) * std::exp(-gamma * t);
}

// Largest wrapped deviation of neighbour phase offsets from the targets.
template <class Theta, class Dphi>
double phase_residual(const Theta& theta, const Dphi& dphi) {
  double worst = 0.0;
  for (int i = 0; i + 1 < theta.size(); ++i) {
    const double d = theta[i + 1] - theta[i] - dphi[i];
    worst = std::max(worst, std::abs(std::atan2(std::sin(d), std::cos(d))));
  }
  return worst;
}

// The weight profile written out case by case.
inline double blend_weight(double d) {
  auto s = [](double t) { return 3 * t * t - 2 * t * t * t; };
  if (d == 0.0) return 1.0;
  if (d <= 0.5) return 1.0 - 0.5 * s(d / 0.5);
  if (d <= 1.0) return 0.5;
  if (d <= 1.5) return 0.5 - 0.5 * s((d - 1.0) / 0.5);
  return 0.0;
}

}  // namespace oracle
