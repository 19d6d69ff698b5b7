#include "hopsim/episode.hpp"

#include <cmath>
#include <random>

#include "hopsim/errors.hpp"
#include "hopsim/integrator.hpp"
#include "hopsim/kinematics.hpp"
#include "hopsim/motor.hpp"

namespace hopsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

void check_state(const SimState& state, const SimOptions& options) {
  const Vec4& q = state.joints.q;
  const Vec4& qd = state.joints.qdot;
  if (!q.allFinite() || !qd.allFinite())
    throw NumericalBlowup("non-finite state", state.t);
  if (qd.cwiseAbs().maxCoeff() > options.blowup_velocity)
    throw NumericalBlowup("joint velocity bound exceeded", state.t);
  if (q.cwiseAbs().maxCoeff() > options.blowup_angle)
    throw NumericalBlowup("joint angle bound exceeded", state.t);
}

Vec2 held_torque(const RobotParams& params, const Vec2& voltage, const Vec4& qd,
                 const Vec2* direct_torque) {
  if (direct_torque) return *direct_torque;
  return Vec2(
      drive_motor(params.hip_motor, params.hip_total_ratio(), voltage[0], qd[kHip]).torque_em,
      drive_motor(params.knee_motor, params.knee_total_ratio(), voltage[1], qd[kKnee])
          .torque_em);
}

}  // namespace

Vec4 standing_pose(const RobotParams& params, const GaitParams& gait, double clearance) {
  const double l3 = params.link3_length;
  const double l4 = params.link4_length;
  // Leg IK in the arm frame for the touchdown target (forward, height)
  const double u = gait.p_ref.y();   // forward offset = -x in the arm frame
  const double v = -gait.p_ref.z();  // depth below the hip
  const double r2 = u * u + v * v;
  const double cos_knee = (r2 - l3 * l3 - l4 * l4) / (2.0 * l3 * l4);
  if (!(cos_knee >= -1.0 && cos_knee <= 1.0))
    throw ConfigError("touchdown foot target outside the leg workspace");
  const double knee = std::acos(cos_knee);  // knee bent in the +theta4 direction
  const double hip =
      std::atan2(u, v) - std::atan2(l4 * std::sin(knee), l3 + l4 * std::cos(knee));

  // Pitch so the foot clears the ground by `clearance`:
  // foot_z = h + La sin(t2) + z_leg cos(t2)
  const Vec3 leg = leg_foot_position(params, hip, knee);
  const double a = params.gantry_arm_length;
  const double b = leg.z();
  const double c = clearance - params.gantry_pivot_height;
  const double amp = std::hypot(a, b);
  if (std::abs(c) > amp)
    throw ConfigError("gantry geometry cannot place the foot at the requested height");
  const double pitch = std::asin(c / amp) - std::atan2(b, a);

  return Vec4(0.0, pitch, hip, knee);
}

int integrate_interval_bits(const RobotParams& params, SimState& state, double interval,
                            const SimOptions& options, EpisodeLog* log,
                            const Vec2* direct_torque) {
  int bits = 0;
  double remaining = interval;

  auto aerial_accel = [&](const Vec4& q, const Vec4& qd) {
    return forward_dynamics_aerial(params, q, qd,
                                   held_torque(params, state.voltage, qd, direct_torque));
  };
  auto stance_accel = [&](const Vec4& q, const Vec4& qd) {
    return forward_dynamics_stance(params, q, qd,
                                   held_torque(params, state.voltage, qd, direct_torque),
                                   state.pin)
        .qddot;
  };
  auto grf_z_now = [&](const Vec4& q, const Vec4& qd) {
    return forward_dynamics_stance(params, q, qd,
                                   held_torque(params, state.voltage, qd, direct_torque),
                                   state.pin)
        .grf.z();
  };

  auto record = [&](double t, int kind) {
    bits |= kind;
    if (log) log->events.push_back({t, kind});
  };

  while (remaining > 1e-12) {
    const double h = std::min(options.inner_dt, remaining);
    const Vec4 q0 = state.joints.q;
    const Vec4 qd0 = state.joints.qdot;

    // Electrical energy over the substep, current held at the substep start
    if (!direct_torque) {
      const MotorDrive hip_drive = drive_motor(params.hip_motor, params.hip_total_ratio(),
                                               state.voltage[0], qd0[kHip]);
      const MotorDrive knee_drive = drive_motor(params.knee_motor, params.knee_total_ratio(),
                                                state.voltage[1], qd0[kKnee]);
      state.electrical_energy += (std::abs(hip_drive.voltage * hip_drive.current) +
                                  std::abs(knee_drive.voltage * knee_drive.current)) *
                                 h;
    }

    if (state.phase == Phase::Aerial) {
      const double z0 = compute_chain(params, q0).foot.z();
      if (!state.touchdown_armed && z0 > options.contact_release_height)
        state.touchdown_armed = true;

      Vec4 q1 = q0, qd1 = qd0;
      rk4_step(q1, qd1, h, aerial_accel);
      const double z1 = compute_chain(params, q1).foot.z();

      const bool crossing = state.touchdown_armed && z0 > 0.0 && z1 <= 0.0;
      const bool tunneled = z1 < -options.contact_release_height;
      if (crossing || tunneled) {
        double h_star = h;
        if (crossing) {
          h_star = refine_crossing(h, options.event_time_tol, [&](double hh) {
            Vec4 qq = q0, vv = qd0;
            rk4_step(qq, vv, hh, aerial_accel);
            return compute_chain(params, qq).foot.z();
          });
          state.joints.q = q0;
          state.joints.qdot = qd0;
          rk4_step(state.joints.q, state.joints.qdot, h_star, aerial_accel);
        } else {
          state.joints.q = q1;
          state.joints.qdot = qd1;
          record(state.t + h, kEventPenetrationFix);
        }
        state.t += h_star;
        remaining -= h_star;
        state.joints.qdot = impact_map(params, state.joints.q, state.joints.qdot);
        state.pin = make_contact_pin(params, state.joints.q);
        state.phase = Phase::Stance;
        state.touchdown_armed = false;
        record(state.t, kEventTouchdown);
        check_state(state, options);
        continue;
      }
      state.joints.q = q1;
      state.joints.qdot = qd1;
    } else {
      const double f0 = grf_z_now(q0, qd0);
      if (f0 <= 0.0) {
        // Ground can only push; release immediately.
        state.phase = Phase::Aerial;
        state.touchdown_armed = false;
        record(state.t, kEventLiftoff);
        continue;
      }
      Vec4 q1 = q0, qd1 = qd0;
      rk4_step(q1, qd1, h, stance_accel);
      const double f1 = grf_z_now(q1, qd1);
      if (f1 <= 0.0) {
        const double h_star = refine_crossing(h, options.event_time_tol, [&](double hh) {
          Vec4 qq = q0, vv = qd0;
          rk4_step(qq, vv, hh, stance_accel);
          return grf_z_now(qq, vv);
        });
        state.joints.q = q0;
        state.joints.qdot = qd0;
        rk4_step(state.joints.q, state.joints.qdot, h_star, stance_accel);
        state.t += h_star;
        remaining -= h_star;
        state.phase = Phase::Aerial;
        state.touchdown_armed = false;
        record(state.t, kEventLiftoff);
        check_state(state, options);
        continue;
      }
      state.joints.q = q1;
      state.joints.qdot = qd1;
    }

    state.t += h;
    remaining -= h;
    check_state(state, options);
  }

  const long lap = static_cast<long>(std::floor(state.joints.q[kYaw] / kTwoPi));
  if (lap != state.lap_count) {
    state.lap_count = lap;
    record(state.t, kEventLap);
  }
  return bits;
}

void integrate_interval(const RobotParams& params, SimState& state, double interval,
                        const SimOptions& options, EpisodeLog* log,
                        const Vec2* direct_torque) {
  integrate_interval_bits(params, state, interval, options, log, direct_torque);
}

EpisodeLog run_episode(const RobotParams& params, const GaitParams& gait,
                       const SimOptions& options) {
  EpisodeLog log;
  log.sample_period = gait.control_period;

  SimState state;
  state.joints.q = standing_pose(params, gait, options.start_clearance);
  state.lap_count =
      static_cast<long>(std::floor(state.joints.q[kYaw] / kTwoPi));

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  const int ticks = static_cast<int>(std::llround(options.duration / gait.control_period));
  log.samples.reserve(ticks + 1);

  int pending_events = 0;
  for (int tick = 0; tick <= ticks; ++tick) {
    const Vec4& q = state.joints.q;
    const Vec4& qd = state.joints.qdot;
    const double foot_z = compute_chain(params, q).foot.z();

    // Instantaneous drives with the voltage currently held (previous command;
    // replaced below once the controller has run this tick).
    auto drives_at = [&](const Vec2& v) {
      return std::array<MotorDrive, 2>{
          drive_motor(params.hip_motor, params.hip_total_ratio(), v[0], qd[kHip]),
          drive_motor(params.knee_motor, params.knee_total_ratio(), v[1], qd[kKnee])};
    };

    // Ground reaction at the tick (for the contact switch and the log)
    Vec3 grf = Vec3::Zero();
    if (state.phase == Phase::Stance) {
      const auto d = drives_at(state.voltage);
      grf = forward_dynamics_stance(params, q, qd, Vec2(d[0].torque_em, d[1].torque_em),
                                    state.pin)
                .grf;
    }

    // Contact switch model: loaded while pinned and pushed, closes on ground
    // contact, re-opens past the release height.
    if (state.phase == Phase::Stance) {
      state.switch_closed = grf.z() > 0.0;
    } else if (state.switch_closed) {
      state.switch_closed = foot_z <= options.contact_release_height;
    } else {
      state.switch_closed = foot_z <= 0.0;
    }

    SensorFrame sensors;
    sensors.encoder_counts = {
        encoder_counts_from_angle(q[kHip], params.hip_total_ratio()),
        encoder_counts_from_angle(q[kKnee], params.knee_total_ratio())};
    sensors.contact_switch = options.sensor_mode == SensorMode::Ideal
                                 ? state.phase == Phase::Stance
                                 : state.switch_closed;
    sensors.joint_angle = {q[kHip], q[kKnee]};
    sensors.joint_velocity = {qd[kHip], qd[kKnee]};
    {
      const auto d = drives_at(state.voltage);
      for (int i = 0; i < 2; ++i) {
        double sensed = d[i].current;
        if (options.current_noise_std > 0.0)
          sensed += options.current_noise_std * noise(rng);
        sensors.motor_current[i] = sensed;
      }
    }

    const ControllerOutput out =
        controller_step(state.controller, params, gait, sensors, options.sensor_mode);
    state.voltage = out.voltage_cmd;
    if (out.event == PhaseEvent::StanceTimeout) {
      pending_events |= kEventControllerTimeout;
      log.events.push_back({state.t, kEventControllerTimeout});
    }

    LogSample sample;
    sample.t = state.t;
    sample.q = q;
    sample.qd = qd;
    const auto drives = drives_at(state.voltage);
    sample.u = Vec2(drives[0].torque_em + (params.friction_enabled
                                               ? gear_friction_torque(params.hip_motor,
                                                                      qd[kHip],
                                                                      params.coulomb_smoothing)
                                               : 0.0),
                    drives[1].torque_em + (params.friction_enabled
                                               ? gear_friction_torque(params.knee_motor,
                                                                      qd[kKnee],
                                                                      params.coulomb_smoothing)
                                               : 0.0));
    sample.u_cmd = out.torque_cmd;
    sample.v_cmd = state.voltage;
    sample.current = Vec2(drives[0].current, drives[1].current);
    sample.grf = grf;
    sample.foot_z = foot_z;
    sample.phase = state.phase;
    sample.event = pending_events;
    sample.sat = (out.voltage_saturated[0] ? kSatHipVoltage : 0) |
                 (out.voltage_saturated[1] ? kSatKneeVoltage : 0) |
                 (drives[0].i_saturated ? kSatHipCurrent : 0) |
                 (drives[1].i_saturated ? kSatKneeCurrent : 0);
    log.samples.push_back(sample);
    pending_events = 0;

    if (tick == ticks) break;
    pending_events |=
        integrate_interval_bits(params, state, gait.control_period, options, &log, nullptr);
  }

  log.final_time = state.t;
  log.electrical_energy = state.electrical_energy;
  return log;
}

}  // namespace hopsim
