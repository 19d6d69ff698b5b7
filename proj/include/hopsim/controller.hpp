#pragma once

#include <array>
#include <cstdint>

#include "hopsim/filters.hpp"
#include "hopsim/gait.hpp"
#include "hopsim/robot_params.hpp"
#include "hopsim/types.hpp"

namespace hopsim {

enum class Phase : std::uint8_t { Aerial = 0, Stance = 1 };

enum class PhaseEvent : std::uint8_t { None = 0, Touchdown, Liftoff, StanceTimeout };

enum class SensorMode : std::uint8_t { Ideal = 0, Quantized = 1 };

inline constexpr double kEncoderCountsPerRev = 28.0;  // motor shaft, quadrature total

// One controller-rate snapshot of what the embedded side can read.
// In quantized mode only counts / switch / current are meaningful; ideal mode
// additionally carries exact joint angles and velocities.
struct SensorFrame {
  std::array<long, 2> encoder_counts{0, 0};  // hip, knee motor shafts
  bool contact_switch = false;
  std::array<double, 2> motor_current{0.0, 0.0};
  std::array<double, 2> joint_angle{0.0, 0.0};
  std::array<double, 2> joint_velocity{0.0, 0.0};
};

struct ControllerState {
  Phase phase = Phase::Aerial;
  double stance_clock = 0.0;
  std::array<FilteredDerivative, 2> velocity_filter;
  Vec2 velocity_estimate = Vec2::Zero();
  Vec2 angle_estimate = Vec2::Zero();
  bool prev_contact = false;
  bool primed = false;
  Vec2 last_voltage_cmd = Vec2::Zero();
  double speed_estimate = 0.0;  // stance-phase foot/hip relative speed estimate
};

struct ControllerOutput {
  Vec2 voltage_cmd = Vec2::Zero();  // V, after supply clamp
  Vec2 torque_cmd = Vec2::Zero();   // N*m desired joint torques (pre-limit)
  PhaseEvent event = PhaseEvent::None;
  std::array<bool, 2> voltage_saturated{false, false};
  double profile_phase = 0.0;  // stance profile s, 0 while aerial
};

// Encoder model: counts accumulate on the motor shaft.
long encoder_counts_from_angle(double joint_angle, double ratio);
double encoder_angle_from_counts(long counts, double ratio);
double encoder_joint_quantum(double ratio);

// Eq.-style stance map: the actuated rows of J_c^T F_d for a world-frame
// force F_d applied at the foot.
Vec2 stance_torques(const RobotParams& params, const Vec4& q, const Vec3& f_d);

// Task-space PD holding the touchdown pose, evaluated leg-locally.
Vec2 aerial_torques(const RobotParams& params, const Vec4& q, const Vec4& qdot,
                    const GaitParams& gait);

// Two-state FSM driven by the contact switch; returns the transition taken.
PhaseEvent fsm_step(ControllerState& ctrl, const GaitParams& gait, bool contact, double dt);

// One 1 kHz control step: estimate -> FSM -> phase torque law -> inverse
// motor model -> supply-clamped voltages.
ControllerOutput controller_step(ControllerState& ctrl, const RobotParams& params,
                                 const GaitParams& gait, const SensorFrame& sensors,
                                 SensorMode mode);

// Internal pieces exposed for tests and the episode runner.
Vec2 leg_stance_torques(const RobotParams& params, double hip_angle, double knee_angle,
                        const Vec3& grf_desired_hip_frame);
Vec2 leg_aerial_torques(const RobotParams& params, const GaitParams& gait, double hip_angle,
                        double knee_angle, double hip_rate, double knee_rate);

}  // namespace hopsim
