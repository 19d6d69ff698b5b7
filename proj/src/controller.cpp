#include "hopsim/controller.hpp"

#include <algorithm>
#include <cmath>

#include "hopsim/bezier.hpp"
#include "hopsim/kinematics.hpp"
#include "hopsim/motor.hpp"

namespace hopsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Hip-frame (radial, forward, vertical) vector expressed in the arm frame the
// controller works in; forward is -x there, radial is unreachable for the
// planar leg and dropped.
Vec3 hip_to_leg_frame(const Vec3& v_hip) { return Vec3(-v_hip.y(), 0.0, v_hip.z()); }

// Smoothing constant for the hardware-style stance speed estimate.
constexpr double kSpeedFilterLambda = 20.0;  // 1/s

}  // namespace

long encoder_counts_from_angle(double joint_angle, double ratio) {
  const double motor_angle = joint_angle * ratio;
  return static_cast<long>(std::floor(motor_angle * kEncoderCountsPerRev / kTwoPi));
}

double encoder_angle_from_counts(long counts, double ratio) {
  return static_cast<double>(counts) * kTwoPi / (kEncoderCountsPerRev * ratio);
}

double encoder_joint_quantum(double ratio) { return kTwoPi / (kEncoderCountsPerRev * ratio); }

Vec2 stance_torques(const RobotParams& params, const Vec4& q, const Vec3& f_d) {
  const Vec4 tau = contact_jacobian(params, q).transpose() * f_d;
  return Vec2(tau[kHip], tau[kKnee]);
}

Vec2 leg_stance_torques(const RobotParams& params, double hip_angle, double knee_angle,
                        const Vec3& grf_desired_hip_frame) {
  // The foot must push the ground with the opposite of the wanted reaction.
  const Vec3 action = -hip_to_leg_frame(grf_desired_hip_frame);
  const Eigen::Matrix<double, 3, 2> j = leg_jacobian(params, hip_angle, knee_angle);
  return j.transpose() * action;
}

Vec2 leg_aerial_torques(const RobotParams& params, const GaitParams& gait, double hip_angle,
                        double knee_angle, double hip_rate, double knee_rate) {
  const Eigen::Matrix<double, 3, 2> j = leg_jacobian(params, hip_angle, knee_angle);
  const Vec3 p = leg_foot_position(params, hip_angle, knee_angle);
  const Vec3 pdot = j * Vec2(hip_rate, knee_rate);
  const Vec3 p_ref = hip_to_leg_frame(gait.p_ref);
  const Vec3 kp(gait.kp.y(), gait.kp.x(), gait.kp.z());
  const Vec3 kd(gait.kd.y(), gait.kd.x(), gait.kd.z());
  const Vec3 f = kp.cwiseProduct(p_ref - p) - kd.cwiseProduct(pdot);
  return j.transpose() * f;
}

Vec2 aerial_torques(const RobotParams& params, const Vec4& q, const Vec4& qdot,
                    const GaitParams& gait) {
  return leg_aerial_torques(params, gait, q[kHip], q[kKnee], qdot[kHip], qdot[kKnee]);
}

PhaseEvent fsm_step(ControllerState& ctrl, const GaitParams& gait, bool contact, double dt) {
  PhaseEvent event = PhaseEvent::None;
  if (ctrl.phase == Phase::Aerial) {
    if (contact && !ctrl.prev_contact) {
      ctrl.phase = Phase::Stance;
      ctrl.stance_clock = 0.0;
      event = PhaseEvent::Touchdown;
    }
  } else {
    if (!contact) {
      ctrl.phase = Phase::Aerial;
      event = PhaseEvent::Liftoff;
    } else if (ctrl.stance_clock >= gait.stance_timeout()) {
      ctrl.phase = Phase::Aerial;
      event = PhaseEvent::StanceTimeout;
    }
  }
  if (ctrl.phase == Phase::Stance && event != PhaseEvent::Touchdown)
    ctrl.stance_clock = std::min(ctrl.stance_clock + dt, gait.stance_timeout());
  ctrl.prev_contact = contact;
  return event;
}

ControllerOutput controller_step(ControllerState& ctrl, const RobotParams& params,
                                 const GaitParams& gait, const SensorFrame& sensors,
                                 SensorMode mode) {
  const double ratios[2] = {params.hip_total_ratio(), params.knee_total_ratio()};

  Vec2 angle, rate;
  if (mode == SensorMode::Quantized) {
    for (int i = 0; i < 2; ++i)
      angle[i] = encoder_angle_from_counts(sensors.encoder_counts[i], ratios[i]);
    if (!ctrl.primed) {
      for (int i = 0; i < 2; ++i) {
        ctrl.velocity_filter[i] = FilteredDerivative(gait.filter_lambda, gait.control_period);
        ctrl.velocity_filter[i].reset(angle[i]);
      }
      ctrl.primed = true;
    }
    for (int i = 0; i < 2; ++i) rate[i] = ctrl.velocity_filter[i].update(angle[i]);
  } else {
    angle = Vec2(sensors.joint_angle[0], sensors.joint_angle[1]);
    rate = Vec2(sensors.joint_velocity[0], sensors.joint_velocity[1]);
    ctrl.primed = true;
  }
  ctrl.angle_estimate = angle;
  ctrl.velocity_estimate = rate;

  ControllerOutput out;
  out.event = fsm_step(ctrl, gait, sensors.contact_switch, gait.control_period);

  if (ctrl.phase == Phase::Stance) {
    const double s = std::clamp(ctrl.stance_clock / gait.stance_duration, 0.0, 1.0);
    out.profile_phase = s;

    double horizontal_peak = -1.0;
    if (gait.speed_loop_enabled) {
      horizontal_peak = std::clamp(
          gait.speed_loop_kp * (gait.target_speed - ctrl.speed_estimate), 0.0,
          gait.max_horizontal_force);
    }
    const Vec3 f_profile = bezier_force_profile(gait, s, horizontal_peak);
    out.torque_cmd = leg_stance_torques(params, angle[0], angle[1], f_profile);

    // Hardware-style speed estimate: with the foot planted, the hip moves at
    // minus the leg-relative foot velocity; forward is -x in the arm frame.
    const Vec3 foot_vel = leg_jacobian(params, angle[0], angle[1]) * rate;
    const double dt = gait.control_period;
    ctrl.speed_estimate = (ctrl.speed_estimate + kSpeedFilterLambda * dt * foot_vel.x()) /
                          (1.0 + kSpeedFilterLambda * dt);
  } else {
    out.torque_cmd = leg_aerial_torques(params, gait, angle[0], angle[1], rate[0], rate[1]);
  }

  const MotorParams* motors[2] = {&params.hip_motor, &params.knee_motor};
  for (int i = 0; i < 2; ++i) {
    const double v_raw =
        inverse_motor_voltage(*motors[i], ratios[i], out.torque_cmd[i], rate[i]);
    out.voltage_saturated[i] = std::abs(v_raw) > motors[i]->v_max;
    out.voltage_cmd[i] = std::clamp(v_raw, -motors[i]->v_max, motors[i]->v_max);
  }
  ctrl.last_voltage_cmd = out.voltage_cmd;
  return out;
}

}  // namespace hopsim
