#pragma once

#include "hopsim/robot_params.hpp"

namespace hopsim {

// Electrical drive state for one voltage command at one joint speed.
struct MotorDrive {
  double voltage = 0.0;     // V actually applied (after supply clamp)
  double current = 0.0;     // A through the winding (after driver clamp)
  double torque_em = 0.0;   // N*m electromagnetic torque at the joint
  bool v_saturated = false;
  bool i_saturated = false;
};

// Brushed DC motor behind a reduction `ratio` (motor revs per joint rev):
//   v = clamp(v_cmd), i = (v - k_t * ratio * w_joint) / R clamped to i_max,
//   torque_em = ratio * k_t * i * efficiency.
MotorDrive drive_motor(const MotorParams& motor, double ratio, double v_cmd,
                       double omega_joint);

// Gearbox friction torque magnitude model (viscous + smoothed coulomb),
// returned as a signed torque opposing omega_joint.
double gear_friction_torque(const MotorParams& motor, double omega_joint,
                            double coulomb_smoothing);

struct MotorOutput {
  double torque = 0.0;   // net joint torque: electromagnetic minus gear friction
  double current = 0.0;  // A, for logging and energy accounting
};

// Net shaft output of the motor + gearbox package at the joint.
MotorOutput motor_torque(const MotorParams& motor, double ratio, double v_cmd,
                         double omega_joint, double coulomb_smoothing);

// Voltage that would produce `torque_des` electromagnetically at the current
// speed, ignoring friction; not clamped.
double inverse_motor_voltage(const MotorParams& motor, double ratio, double torque_des,
                             double omega_joint);

}  // namespace hopsim
