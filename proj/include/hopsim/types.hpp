#pragma once

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace hopsim {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat2 = Eigen::Matrix2d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat34 = Eigen::Matrix<double, 3, 4>;
using Mat32 = Eigen::Matrix<double, 3, 2>;
using Mat42 = Eigen::Matrix<double, 4, 2>;

// Joint indexing: 0 gantry yaw, 1 gantry pitch, 2 hip, 3 knee.
inline constexpr int kNumJoints = 4;
inline constexpr int kYaw = 0;
inline constexpr int kPitch = 1;
inline constexpr int kHip = 2;
inline constexpr int kKnee = 3;

struct JointState {
  Vec4 q = Vec4::Zero();     // rad, unwrapped (yaw accumulates over laps)
  Vec4 qdot = Vec4::Zero();  // rad/s
};

// Rigid transform, rotation orthonormal with det +1.
struct Transform {
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();

  Vec3 apply(const Vec3& p) const { return rotation * p + translation; }
};

}  // namespace hopsim
