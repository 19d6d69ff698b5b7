#pragma once

#include <vector>

#include "hopsim/episode.hpp"
#include "hopsim/robot_params.hpp"

namespace hopsim {

struct Metrics {
  int hop_cycles = 0;               // completed touchdown-to-touchdown cycles
  double steady_speed = 0.0;        // m/s, |yaw rate| * arm length, last cycles
  double mean_stance_duration = 0.0;  // s, over all completed stances
  double apex_hop_height = 0.0;     // m, mean peak foot clearance per flight
  double electrical_energy = 0.0;   // J over the whole episode
  double distance = 0.0;            // m of tangential hip travel
  double cost_of_transport = 0.0;   // E / (m g d); infinity when d ~ 0
  bool cot_defined = false;
  std::vector<double> lap_times = {};   // s, completed yaw revolutions
  int saturated_samples = 0;
  int touchdown_count = 0;
  int liftoff_count = 0;
};

// Cycle-based gait metrics. Throws InsufficientData when the log holds fewer
// than two completed hop cycles.
Metrics compute_metrics(const EpisodeLog& log, const RobotParams& params);

// Degenerate-path metrics (speed 0, CoT undefined) for logs without enough
// cycles; never throws.
Metrics degenerate_metrics(const EpisodeLog& log, const RobotParams& params);

}  // namespace hopsim
