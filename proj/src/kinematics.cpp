#include "hopsim/kinematics.hpp"

#include <cmath>

namespace hopsim {

Mat3 rot_x(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << 1, 0, 0,
       0, c, -s,
       0, s, c;
  return r;
}

Mat3 rot_y(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, 0, s,
       0, 1, 0,
       -s, 0, c;
  return r;
}

Mat3 rot_z(double a) {
  const double c = std::cos(a), s = std::sin(a);
  Mat3 r;
  r << c, -s, 0,
       s, c, 0,
       0, 0, 1;
  return r;
}

ChainData compute_chain(const RobotParams& params, const Vec4& q) {
  ChainData c;
  const double h = params.gantry_pivot_height;
  const double la = params.gantry_arm_length;
  const double l3 = params.link3_length;
  const double l4 = params.link4_length;

  c.R[0] = Mat3::Identity();
  c.p[0] = Vec3::Zero();

  // Joint 0: yaw about world z at the base
  c.origin[0] = Vec3::Zero();
  c.axis[0] = Vec3::UnitZ();
  c.R[1] = rot_z(q[kYaw]);
  c.p[1] = Vec3::Zero();

  // Joint 1: pitch about the column-fixed x axis at the top of the column
  c.origin[1] = Vec3(0, 0, h);
  c.axis[1] = c.R[1] * Vec3::UnitX();
  c.R[2] = c.R[1] * rot_x(q[kPitch]);
  c.p[2] = c.origin[1];

  // Joint 2: hip, about the arm axis (radial) at the end of the arm
  c.origin[2] = c.p[2] + c.R[2] * Vec3(0, la, 0);
  c.axis[2] = c.R[2] * Vec3::UnitY();
  c.R[3] = c.R[2] * rot_y(q[kHip]);
  c.p[3] = c.origin[2];

  // Joint 3: knee, parallel to the hip axis, at the end of the upper leg
  c.origin[3] = c.p[3] + c.R[3] * Vec3(0, 0, -l3);
  c.axis[3] = c.R[3] * Vec3::UnitY();
  c.R[4] = c.R[3] * rot_y(q[kKnee]);
  c.p[4] = c.origin[3];

  c.foot = c.p[4] + c.R[4] * Vec3(0, 0, -l4);
  c.hip = c.origin[2];
  c.knee = c.origin[3];

  for (int b = 1; b <= 4; ++b) c.com[b] = c.p[b] + c.R[b] * params.links[b].com;
  c.counterweight = c.p[2] + c.R[2] * Vec3(0, -params.counterweight_arm, 0);
  return c;
}

std::array<Transform, 5> forward_kinematics(const RobotParams& params, const Vec4& q) {
  const ChainData c = compute_chain(params, q);
  std::array<Transform, 5> out;
  for (int b = 0; b < 5; ++b) out[b] = Transform{c.R[b], c.p[b]};
  return out;
}

Vec3 foot_position(const RobotParams& params, const Vec4& q) {
  return compute_chain(params, q).foot;
}

Vec3 hip_position(const RobotParams& params, const Vec4& q) {
  return compute_chain(params, q).hip;
}

Mat34 point_jacobian(const ChainData& chain, const Vec3& x, int body) {
  Mat34 j = Mat34::Zero();
  for (int k = 0; k < body; ++k) j.col(k) = chain.axis[k].cross(x - chain.origin[k]);
  return j;
}

// d/dq_m of the columns of point_jacobian(x, body). Chain rules for a serial
// chain: axes and pivots of joint k ride on joints m < k, the point itself on
// joints m < body.
std::array<Mat34, 4> point_jacobian_partials(const ChainData& chain, const Vec3& x, int body) {
  std::array<Mat34, 4> dj;
  for (int m = 0; m < 4; ++m) {
    dj[m] = Mat34::Zero();
    if (m >= body) continue;
    const Vec3 dx = chain.axis[m].cross(x - chain.origin[m]);
    for (int k = 0; k < body; ++k) {
      Vec3 da = Vec3::Zero();
      Vec3 dorigin = Vec3::Zero();
      if (m < k) {
        da = chain.axis[m].cross(chain.axis[k]);
        dorigin = chain.axis[m].cross(chain.origin[k] - chain.origin[m]);
      }
      dj[m].col(k) = da.cross(x - chain.origin[k]) + chain.axis[k].cross(dx - dorigin);
    }
  }
  return dj;
}

Mat34 contact_jacobian(const RobotParams& params, const Vec4& q) {
  const ChainData c = compute_chain(params, q);
  return point_jacobian(c, c.foot, 4);
}

Mat34 contact_jacobian_dot(const RobotParams& params, const Vec4& q, const Vec4& qdot) {
  const ChainData c = compute_chain(params, q);
  const auto dj = point_jacobian_partials(c, c.foot, 4);
  Mat34 jdot = Mat34::Zero();
  for (int m = 0; m < 4; ++m) jdot += dj[m] * qdot[m];
  return jdot;
}

Mat3 hip_frame(double theta1) {
  const Mat3 rz = rot_z(theta1);
  Mat3 f;
  f.col(0) = rz * Vec3::UnitY();          // radial, along the arm
  f.col(1) = rz * Vec3(-1.0, 0.0, 0.0);   // forward = z_hat x radial
  f.col(2) = Vec3::UnitZ();
  return f;
}

Vec3 leg_foot_position(const RobotParams& params, double hip_angle, double knee_angle) {
  const Mat3 r3 = rot_y(hip_angle);
  return r3 * (Vec3(0, 0, -params.link3_length) +
               rot_y(knee_angle) * Vec3(0, 0, -params.link4_length));
}

Eigen::Matrix<double, 3, 2> leg_jacobian(const RobotParams& params, double hip_angle,
                                         double knee_angle) {
  const Vec3 y = Vec3::UnitY();
  const Vec3 knee = rot_y(hip_angle) * Vec3(0, 0, -params.link3_length);
  const Vec3 foot = leg_foot_position(params, hip_angle, knee_angle);
  Eigen::Matrix<double, 3, 2> j;
  j.col(0) = y.cross(foot);
  j.col(1) = y.cross(foot - knee);
  return j;
}

}  // namespace hopsim
