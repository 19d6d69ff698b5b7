#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hopsim {

// Process exit codes shared by all subcommands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitDiff = 1;     // compare: deviation beyond tolerance
inline constexpr int kExitConfig = 2;   // config / usage errors
inline constexpr int kExitNumeric = 3;  // numerical failure during simulation

struct RunSpec {
  std::string robot_path;
  std::string gait_path;
  double duration = 10.0;
  std::string out_dir;  // empty: $HOPSIM_OUT_DIR or "."
  std::string sensor_mode = "ideal";
  std::vector<std::string> overrides;  // key=value, robot or gait keys
  std::uint64_t seed = 0;

  // sweep only
  std::string sweep_param;
  std::vector<double> sweep_values;
  int jobs = 0;  // 0: pick automatically
};

int cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunSpec& spec, std::ostream& out, std::ostream& err);
int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err);
int cmd_compare(const std::string& path_a, const std::string& path_b, double tol,
                std::ostream& out, std::ostream& err);

}  // namespace hopsim
