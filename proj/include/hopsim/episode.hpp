#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hopsim/controller.hpp"
#include "hopsim/dynamics.hpp"
#include "hopsim/gait.hpp"
#include "hopsim/robot_params.hpp"
#include "hopsim/types.hpp"

namespace hopsim {

struct SimOptions {
  double duration = 10.0;    // s
  double inner_dt = 1e-4;    // s, RK4 substep
  SensorMode sensor_mode = SensorMode::Ideal;
  std::uint64_t seed = 0;
  double current_noise_std = 0.0;   // A, sensed-current noise (0 disables)
  double event_time_tol = 1e-8;     // s, bisection tolerance
  double start_clearance = 3e-3;    // m, initial foot height above ground
  double contact_release_height = 1e-3;  // m, switch hysteresis band
  double blowup_velocity = 1e4;     // rad/s bound before declaring blowup
  double blowup_angle = 1e6;        // rad bound
};

// Continuous + discrete simulator state between control ticks.
struct SimState {
  double t = 0.0;
  JointState joints;
  Phase phase = Phase::Aerial;       // physics phase (pin active or not)
  ContactPin pin;                    // valid while phase == Stance
  ControllerState controller;
  Vec2 voltage = Vec2::Zero();       // zero-order-held command
  double electrical_energy = 0.0;    // J, sum of |v*i| dt over both motors
  long lap_count = 0;                // completed revolutions of the yaw joint
  bool switch_closed = false;        // simulated contact switch state
  bool touchdown_armed = true;
};

enum EventKind : int {
  kEventTouchdown = 1,
  kEventLiftoff = 2,
  kEventLap = 4,
  kEventControllerTimeout = 8,
  kEventPenetrationFix = 16,
};

struct EventRecord {
  double t;
  int kind;
};

enum SatFlag : int {
  kSatHipVoltage = 1,
  kSatKneeVoltage = 2,
  kSatHipCurrent = 4,
  kSatKneeCurrent = 8,
};

struct LogSample {
  double t;
  Vec4 q;
  Vec4 qd;
  Vec2 u;          // applied joint torque (electromagnetic + gear friction)
  Vec2 u_cmd;      // controller-desired torque before motor limits
  Vec2 v_cmd;      // held voltage command
  Vec2 current;    // winding current at the sample
  Vec3 grf;        // world ground reaction (zero while aerial)
  double foot_z;
  Phase phase;     // physics phase
  int event;       // EventKind bits raised since the previous sample
  int sat;         // SatFlag bits
};

struct EpisodeLog {
  double sample_period = 1e-3;
  std::vector<LogSample> samples;
  std::vector<EventRecord> events;
  double final_time = 0.0;
  // Substep-accurate |v*i| integral; negative means unknown (e.g. a log read
  // back from disk), in which case metrics integrate from the samples.
  double electrical_energy = -1.0;
};

// Standing start pose: leg at the touchdown target, pitch solved so the foot
// sits `clearance` above the ground.
Vec4 standing_pose(const RobotParams& params, const GaitParams& gait, double clearance);

// Full hybrid closed-loop run. Throws NumericalBlowup when the state leaves
// the configured bounds.
EpisodeLog run_episode(const RobotParams& params, const GaitParams& gait,
                       const SimOptions& options);

// One zero-order-hold control interval of passive/driven integration without
// the controller; exposed for integrator and conservation tests. Voltages
// apply through the motor model; when `direct_torque` is non-null the motor
// model is bypassed and *direct_torque is used as the joint torque pair.
void integrate_interval(const RobotParams& params, SimState& state, double interval,
                        const SimOptions& options, EpisodeLog* log,
                        const Vec2* direct_torque = nullptr);

}  // namespace hopsim
