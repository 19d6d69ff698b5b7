#include "hopsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hopsim/errors.hpp"

namespace hopsim {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct EventTimes {
  std::vector<double> touchdowns;
  std::vector<double> liftoffs;
};

EventTimes collect_events(const EpisodeLog& log) {
  EventTimes ev;
  for (const auto& e : log.events) {
    if (e.kind & kEventTouchdown) ev.touchdowns.push_back(e.t);
    if (e.kind & kEventLiftoff) ev.liftoffs.push_back(e.t);
  }
  return ev;
}

double sample_electrical_energy(const EpisodeLog& log) {
  if (log.electrical_energy >= 0.0) return log.electrical_energy;
  double e = 0.0;
  for (size_t i = 1; i < log.samples.size(); ++i) {
    const auto& s = log.samples[i - 1];
    const double dt = log.samples[i].t - s.t;
    e += (std::abs(s.v_cmd[0] * s.current[0]) + std::abs(s.v_cmd[1] * s.current[1])) * dt;
  }
  return e;
}

Metrics common_metrics(const EpisodeLog& log, const RobotParams& params) {
  Metrics m;
  const auto ev = collect_events(log);
  m.touchdown_count = static_cast<int>(ev.touchdowns.size());
  m.liftoff_count = static_cast<int>(ev.liftoffs.size());
  m.hop_cycles = std::max(0, m.touchdown_count - 1);
  m.electrical_energy = sample_electrical_energy(log);

  if (log.samples.empty()) return m;

  const double theta_start = log.samples.front().q[kYaw];
  const double theta_end = log.samples.back().q[kYaw];
  m.distance = std::abs(theta_end - theta_start) * params.gantry_arm_length;

  // Lap times: crossings of whole yaw revolutions relative to the start
  for (size_t i = 1; i < log.samples.size(); ++i) {
    const double a = log.samples[i - 1].q[kYaw] - theta_start;
    const double b = log.samples[i].q[kYaw] - theta_start;
    const long la = static_cast<long>(std::floor(a / kTwoPi));
    const long lb = static_cast<long>(std::floor(b / kTwoPi));
    if (lb != la && b != a) {
      const double target = kTwoPi * static_cast<double>(std::max(la, lb));
      const double frac = (target - a) / (b - a);
      m.lap_times.push_back(log.samples[i - 1].t +
                            frac * (log.samples[i].t - log.samples[i - 1].t));
    }
  }

  for (const auto& s : log.samples)
    if (s.sat != 0) ++m.saturated_samples;
  return m;
}

}  // namespace

Metrics degenerate_metrics(const EpisodeLog& log, const RobotParams& params) {
  Metrics m = common_metrics(log, params);
  m.steady_speed = 0.0;
  m.cost_of_transport = std::numeric_limits<double>::infinity();
  m.cot_defined = false;
  return m;
}

Metrics compute_metrics(const EpisodeLog& log, const RobotParams& params) {
  Metrics m = common_metrics(log, params);
  const auto ev = collect_events(log);
  if (m.hop_cycles < 2)
    throw InsufficientData("need at least 2 completed hop cycles, have " +
                           std::to_string(m.hop_cycles));

  // Steady-state window: the last up-to-5 completed cycles
  const int window = std::min<int>(5, m.hop_cycles);
  const double t_from = ev.touchdowns[ev.touchdowns.size() - 1 - window];
  const double t_to = ev.touchdowns.back();

  double yaw_rate_sum = 0.0;
  int yaw_rate_n = 0;
  for (const auto& s : log.samples) {
    if (s.t < t_from || s.t > t_to) continue;
    yaw_rate_sum += s.qd[kYaw];
    ++yaw_rate_n;
  }
  m.steady_speed = yaw_rate_n > 0
                       ? std::abs(yaw_rate_sum / yaw_rate_n) * params.gantry_arm_length
                       : 0.0;

  // Stance durations: touchdown to the next liftoff
  std::vector<double> stances;
  size_t li = 0;
  for (const double td : ev.touchdowns) {
    while (li < ev.liftoffs.size() && ev.liftoffs[li] <= td) ++li;
    if (li < ev.liftoffs.size()) stances.push_back(ev.liftoffs[li] - td);
  }
  if (!stances.empty()) {
    double sum = 0.0;
    for (double s : stances) sum += s;
    m.mean_stance_duration = sum / static_cast<double>(stances.size());
  }

  // Apex clearance per flight (liftoff to the next touchdown), averaged
  std::vector<double> apexes;
  size_t ti = 0;
  for (const double lo : ev.liftoffs) {
    while (ti < ev.touchdowns.size() && ev.touchdowns[ti] <= lo) ++ti;
    if (ti >= ev.touchdowns.size()) break;
    const double td = ev.touchdowns[ti];
    double apex = 0.0;
    for (const auto& s : log.samples) {
      if (s.t < lo || s.t > td) continue;
      apex = std::max(apex, s.foot_z);
    }
    apexes.push_back(apex);
  }
  if (!apexes.empty()) {
    double sum = 0.0;
    for (double a : apexes) sum += a;
    m.apex_hop_height = sum / static_cast<double>(apexes.size());
  }

  const double weight = params.total_mass() * std::max(params.gravity, 1e-9);
  if (m.distance > 1e-6) {
    m.cost_of_transport = m.electrical_energy / (weight * m.distance);
    m.cot_defined = true;
  } else {
    m.cost_of_transport = std::numeric_limits<double>::infinity();
    m.cot_defined = false;
  }
  return m;
}

}  // namespace hopsim
