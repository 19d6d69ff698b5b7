#pragma once

#include <array>
#include <string>

#include "hopsim/types.hpp"

namespace hopsim {

struct MotorParams {
  double torque_constant = 0.0188;   // N*m/A (= V*s/rad back-EMF constant)
  double terminal_resistance = 1.1;  // ohm
  double gear_ratio = 26.9;          // motor revs per joint rev (belt included)
  double gear_efficiency = 0.85;     // (0, 1]
  double viscous_friction = 0.01;    // N*m*s/rad, joint side
  double coulomb_friction = 0.08;    // N*m, joint side
  double v_max = 12.0;               // V, supply limit
  double i_max = 30.0;               // A, driver limit
  double rotor_inertia = 1.2e-6;     // kg*m^2, rotor side
};

enum class SpringEngagement { Always, Unilateral };

struct SpringParams {
  double stiffness = 0.0;    // N*m/rad
  double rest_angle = 0.0;   // rad, knee joint angle at zero torque
  SpringEngagement engagement = SpringEngagement::Always;
};

struct LinkInertial {
  double mass = 0.0;              // kg
  Vec3 com = Vec3::Zero();        // m, link frame, measured from the link origin
  Mat3 inertia = Mat3::Zero();    // kg*m^2 about the COM, link frame
};

// Full physical description of the 5-body chain:
// body 0 fixed base, body 1 gantry column (yaw), body 2 gantry arm (pitch),
// body 3 upper leg (hip), body 4 lower leg (knee) ending at the foot point.
struct RobotParams {
  // Geometry
  double gantry_pivot_height = 0.40;  // m, base to pitch axis
  double gantry_arm_length = 0.60;    // m, pitch axis to hip joint
  double link3_length = 0.30;         // m, hip to knee
  double link4_length = 0.18;         // m, knee to foot point

  // Inertial properties, indexed 1..4 (index 0 unused, base is static)
  std::array<LinkInertial, 5> links{};

  double counterweight_mass = 2.3;  // kg, point mass on the arm opposite the leg
  double counterweight_arm = 0.20;  // m, distance from pitch axis

  SpringParams knee_spring;

  MotorParams hip_motor;
  MotorParams knee_motor;
  double belt_ratio = 1.0;  // knee transmission stage between gearbox and joint

  double gravity = 9.81;            // m/s^2 (0 disables gravity, test switch)
  bool friction_enabled = true;     // gear friction on/off (test switch)
  double coulomb_smoothing = 0.01;  // rad/s, tanh width for coulomb friction

  // Contact model
  double baumgarte_alpha = 50.0;  // 1/s, velocity stabilization gain
  double baumgarte_beta = 50.0;   // 1/s, position stabilization gain
  // Pin the anchor-radial axis too. The default pins only the tangential and
  // vertical axes (motion in the paper-planar sense); the radial pin
  // over-constrains the gantry pitch and is kept as an experiment switch.
  bool contact_pin_radial = false;

  // Joint-side total reductions (gearbox, plus belt stage on the knee)
  double hip_total_ratio() const { return hip_motor.gear_ratio; }
  double knee_total_ratio() const { return knee_motor.gear_ratio * belt_ratio; }

  double total_mass() const {
    double m = counterweight_mass;
    for (int b = 1; b <= 4; ++b) m += links[b].mass;
    return m;
  }
};

// Adjustable ranges of the physical kit; breaches are reported by the
// validator (warnings for catalog ranges, errors for physics).
inline constexpr double kLink4Min = 0.060, kLink4Max = 0.260;
inline constexpr double kGantryArmMin = 0.1, kGantryArmMax = 1.1;
inline constexpr double kGearRatioMin = 3.7, kGearRatioMax = 188.0;

}  // namespace hopsim
