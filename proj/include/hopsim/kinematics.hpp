#pragma once

#include <array>

#include "hopsim/robot_params.hpp"
#include "hopsim/types.hpp"

namespace hopsim {

// World-frame chain state at a configuration q. Body b >= 1 is driven by
// joint b-1; joint origins/axes are indexed by joint. Everything downstream
// of joint m rotates about (axis[m], origin[m]).
struct ChainData {
  std::array<Mat3, 5> R;       // body rotations, R[0] = I
  std::array<Vec3, 5> p;       // body frame origins
  std::array<Vec3, 4> axis;    // joint axes, unit vectors
  std::array<Vec3, 4> origin;  // joint pivot points
  std::array<Vec3, 5> com;     // body COM positions (com[0] unused)
  Vec3 counterweight;          // point-mass position on the arm
  Vec3 hip;                    // hip joint origin (== origin[2])
  Vec3 knee;                   // knee joint origin (== origin[3])
  Vec3 foot;                   // foot contact point
};

ChainData compute_chain(const RobotParams& params, const Vec4& q);

// Poses of the five bodies (base, column, arm, upper leg, lower leg).
std::array<Transform, 5> forward_kinematics(const RobotParams& params, const Vec4& q);

Vec3 foot_position(const RobotParams& params, const Vec4& q);
Vec3 hip_position(const RobotParams& params, const Vec4& q);

// J_c: world foot velocity = J_c * qdot.
Mat34 contact_jacobian(const RobotParams& params, const Vec4& q);
Mat34 contact_jacobian_dot(const RobotParams& params, const Vec4& q, const Vec4& qdot);

// Point Jacobian of an arbitrary point x fixed to body b, and its partials.
Mat34 point_jacobian(const ChainData& chain, const Vec3& x, int body);
std::array<Mat34, 4> point_jacobian_partials(const ChainData& chain, const Vec3& x, int body);

// Hip-aligned frame at yaw angle theta1: columns are the radial, forward
// (travel direction of increasing yaw) and vertical unit vectors.
Mat3 hip_frame(double theta1);

// Leg-local kinematics in the arm (link 2) frame, the frame the hardware
// controller can actually observe. Positions are relative to the hip joint;
// the leg moves in the local x-z plane.
Vec3 leg_foot_position(const RobotParams& params, double hip_angle, double knee_angle);
Eigen::Matrix<double, 3, 2> leg_jacobian(const RobotParams& params, double hip_angle,
                                         double knee_angle);

// Elementary rotations (column-major world <- local)
Mat3 rot_x(double a);
Mat3 rot_y(double a);
Mat3 rot_z(double a);

}  // namespace hopsim
