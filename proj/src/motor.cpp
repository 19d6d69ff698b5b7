#include "hopsim/motor.hpp"

#include <algorithm>
#include <cmath>

namespace hopsim {

MotorDrive drive_motor(const MotorParams& motor, double ratio, double v_cmd,
                       double omega_joint) {
  MotorDrive d;
  d.voltage = std::clamp(v_cmd, -motor.v_max, motor.v_max);
  d.v_saturated = std::abs(v_cmd) > motor.v_max;

  const double back_emf = motor.torque_constant * ratio * omega_joint;
  double i = (d.voltage - back_emf) / motor.terminal_resistance;
  if (std::abs(i) > motor.i_max) {
    i = std::copysign(motor.i_max, i);
    d.i_saturated = true;
  }
  d.current = i;
  d.torque_em = ratio * motor.torque_constant * i * motor.gear_efficiency;
  return d;
}

double gear_friction_torque(const MotorParams& motor, double omega_joint,
                            double coulomb_smoothing) {
  return -(motor.viscous_friction * omega_joint +
           motor.coulomb_friction * std::tanh(omega_joint / coulomb_smoothing));
}

MotorOutput motor_torque(const MotorParams& motor, double ratio, double v_cmd,
                         double omega_joint, double coulomb_smoothing) {
  const MotorDrive d = drive_motor(motor, ratio, v_cmd, omega_joint);
  return MotorOutput{d.torque_em + gear_friction_torque(motor, omega_joint, coulomb_smoothing),
                     d.current};
}

double inverse_motor_voltage(const MotorParams& motor, double ratio, double torque_des,
                             double omega_joint) {
  const double i_des =
      torque_des / (ratio * motor.torque_constant * motor.gear_efficiency);
  return i_des * motor.terminal_resistance +
         motor.torque_constant * ratio * omega_joint;
}

}  // namespace hopsim
