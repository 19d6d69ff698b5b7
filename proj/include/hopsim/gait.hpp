#pragma once

#include "hopsim/types.hpp"

namespace hopsim {

// Gait and controller configuration. Task-space vectors are expressed in the
// hip-aligned frame: x radial (along the arm), y forward (travel direction),
// z vertical.
struct GaitParams {
  double stance_duration = 0.15;       // s, projected stance time T_s
  double peak_vertical_force = 80.0;   // N, vertical profile peak
  double peak_horizontal_force = 0.0;  // N, forward profile peak (speed command)
  int bezier_degree = 4;

  Vec3 p_ref = Vec3(0.0, 0.04, -0.44);  // m, touchdown foot target w.r.t. hip
  Vec3 kp = Vec3(500.0, 500.0, 500.0);  // N/m, aerial PD diagonal
  Vec3 kd = Vec3(50.0, 50.0, 50.0);     // N*s/m

  double filter_lambda = 10.0;        // 1/s, velocity filter constant
  double control_period = 1e-3;       // s
  double stance_timeout_factor = 2.0; // stance forced to end at factor * T_s

  // Optional proportional outer speed loop; replaces the fixed horizontal
  // peak with kp_speed * (target - estimate) when enabled.
  bool speed_loop_enabled = false;
  double speed_loop_kp = 0.0;          // N per m/s
  double target_speed = 0.0;           // m/s
  double max_horizontal_force = 120.0; // N, clamp for the speed loop output

  double stance_timeout() const { return stance_timeout_factor * stance_duration; }
};

}  // namespace hopsim
