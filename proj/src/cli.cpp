#include "hopsim/cli.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <thread>

#include "hopsim/config.hpp"
#include "hopsim/errors.hpp"
#include "hopsim/log_io.hpp"
#include "hopsim/metrics.hpp"

namespace hopsim {

namespace {

namespace fs = std::filesystem;

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string short_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string resolve_out_dir(const RunSpec& spec) {
  if (!spec.out_dir.empty()) return spec.out_dir;
  if (const char* env = std::getenv("HOPSIM_OUT_DIR"); env && *env) return env;
  return ".";
}

SensorMode parse_sensor_mode(const std::string& mode) {
  if (mode == "ideal") return SensorMode::Ideal;
  if (mode == "quantized") return SensorMode::Quantized;
  throw ConfigError("sensor mode must be 'ideal' or 'quantized', got '" + mode + "'");
}

struct LoadedConfigs {
  FlatConfig robot_cfg;
  FlatConfig gait_cfg;
  RobotParams robot;
  GaitParams gait;
};

LoadedConfigs load_configs(const RunSpec& spec) {
  LoadedConfigs lc;
  lc.robot_cfg = load_config_file(spec.robot_path);
  lc.gait_cfg = load_config_file(spec.gait_path);

  // Route each override to the file that owns the key
  std::vector<std::string> robot_sets, gait_sets;
  for (const std::string& s : spec.overrides) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0)
      throw ConfigError("override must look like key=value, got '" + s + "'");
    const std::string key = s.substr(0, eq);
    FlatConfig probe_robot = lc.robot_cfg;
    FlatConfig probe_gait = lc.gait_cfg;
    bool in_robot = true, in_gait = true;
    try {
      apply_overrides(probe_robot, {s});
    } catch (const ConfigError&) {
      in_robot = false;
    }
    try {
      apply_overrides(probe_gait, {s});
    } catch (const ConfigError&) {
      in_gait = false;
    }
    if (in_robot && !in_gait)
      robot_sets.push_back(s);
    else if (in_gait && !in_robot)
      gait_sets.push_back(s);
    else if (in_robot && in_gait)
      throw ConfigError("override key '" + key + "' is ambiguous between robot and gait");
    else
      throw ConfigError("override names unknown key '" + key + "'");
  }
  apply_overrides(lc.robot_cfg, robot_sets);
  apply_overrides(lc.gait_cfg, gait_sets);

  lc.robot = robot_from_config(lc.robot_cfg);
  lc.gait = gait_from_config(lc.gait_cfg);
  return lc;
}

std::map<std::string, std::string> run_settings(const RunSpec& spec) {
  return {{"duration", num(spec.duration)},
          {"sensor_mode", spec.sensor_mode},
          {"seed", std::to_string(spec.seed)},
          {"robot_file", spec.robot_path},
          {"gait_file", spec.gait_path}};
}

struct EpisodeArtifacts {
  Metrics metrics;
  bool insufficient = false;
  std::string log_path;
  std::string metrics_path;
};

EpisodeArtifacts run_and_write(const LoadedConfigs& lc, const RunSpec& spec,
                               const std::string& stem) {
  SimOptions options;
  options.duration = spec.duration;
  options.sensor_mode = parse_sensor_mode(spec.sensor_mode);
  options.seed = spec.seed;

  const EpisodeLog log = run_episode(lc.robot, lc.gait, options);

  EpisodeArtifacts art;
  try {
    art.metrics = compute_metrics(log, lc.robot);
  } catch (const InsufficientData&) {
    art.metrics = degenerate_metrics(log, lc.robot);
    art.insufficient = true;
  }

  const fs::path dir = resolve_out_dir(spec);
  fs::create_directories(dir);
  art.log_path = (dir / (stem + ".csv")).string();
  art.metrics_path = (dir / (stem + "_metrics.yaml")).string();

  const Provenance prov = make_provenance(lc.robot_cfg, lc.gait_cfg, run_settings(spec));
  write_log_csv(art.log_path, log, prov);
  write_metrics_yaml(art.metrics_path, art.metrics, prov, art.insufficient);
  return art;
}

void print_summary(std::ostream& out, const std::string& label, const EpisodeArtifacts& a) {
  out << label << ": speed " << short_num(a.metrics.steady_speed) << " m/s, hops "
      << a.metrics.hop_cycles << ", stance " << short_num(a.metrics.mean_stance_duration)
      << " s, CoT "
      << (a.metrics.cot_defined ? short_num(a.metrics.cost_of_transport)
                                : std::string("inf"))
      << ", sat samples " << a.metrics.saturated_samples << " -> " << a.log_path << "\n";
}

}  // namespace

int cmd_run(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    const LoadedConfigs lc = load_configs(spec);
    if (spec.duration <= 0.0) throw ConfigError("duration must be positive");
    const EpisodeArtifacts art = run_and_write(lc, spec, "episode");
    print_summary(out, "run", art);
    return kExitOk;
  } catch (const NumericalBlowup& e) {
    err << "numerical failure at t=" << e.t << ": " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_sweep(const RunSpec& spec, std::ostream& out, std::ostream& err) {
  try {
    if (spec.sweep_param.empty()) throw ConfigError("sweep requires --param");
    if (spec.sweep_values.empty()) throw ConfigError("sweep requires --values");
    for (double v : spec.sweep_values)
      if (!std::isfinite(v)) throw ConfigError("sweep values must be finite");
    if (spec.duration <= 0.0) throw ConfigError("duration must be positive");

    const size_t n = spec.sweep_values.size();
    std::vector<EpisodeArtifacts> results(n);
    std::vector<std::string> errors(n);

    unsigned pool = spec.jobs > 0 ? static_cast<unsigned>(spec.jobs)
                                  : std::min<unsigned>(std::thread::hardware_concurrency(),
                                                       static_cast<unsigned>(n));
    pool = std::max(1u, std::min<unsigned>(pool, static_cast<unsigned>(n)));

    std::atomic<size_t> next{0};
    auto worker = [&]() {
      for (size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
        try {
          RunSpec one = spec;
          one.overrides.push_back(spec.sweep_param + "=" + num(spec.sweep_values[i]));
          const LoadedConfigs lc = load_configs(one);
          results[i] = run_and_write(lc, one,
                                     "sweep_" + spec.sweep_param + "_" +
                                         short_num(spec.sweep_values[i]));
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      }
    };
    std::vector<std::thread> threads;
    for (unsigned i = 0; i < pool; ++i) threads.emplace_back(worker);
    for (auto& t : threads) t.join();

    for (size_t i = 0; i < n; ++i)
      if (!errors[i].empty())
        throw ConfigError("sweep value " + num(spec.sweep_values[i]) +
                          " failed: " + errors[i]);

    const fs::path dir = resolve_out_dir(spec);
    const std::string summary_path = (dir / "sweep_summary.csv").string();
    std::ofstream summary(summary_path);
    if (!summary) throw ConfigError("cannot write " + summary_path);
    summary << "# hopsim sweep summary\n";
    summary << "# schema_version: " << kLogSchemaVersion << "\n";
    summary << "# param: " << spec.sweep_param << "\n";
    summary << spec.sweep_param
            << ",steady_speed,mean_stance_duration,hop_cycles,apex_hop_height,"
               "cost_of_transport,saturated_samples\n";
    for (size_t i = 0; i < n; ++i) {
      const Metrics& m = results[i].metrics;
      summary << num(spec.sweep_values[i]) << ',' << num(m.steady_speed) << ','
              << num(m.mean_stance_duration) << ',' << m.hop_cycles << ','
              << num(m.apex_hop_height) << ','
              << (m.cot_defined ? num(m.cost_of_transport) : std::string("inf")) << ','
              << m.saturated_samples << "\n";
    }
    summary.close();

    for (size_t i = 0; i < n; ++i)
      print_summary(out, spec.sweep_param + "=" + short_num(spec.sweep_values[i]),
                    results[i]);

    bool speed_monotone = true;
    for (size_t i = 1; i < n; ++i)
      if (results[i].metrics.steady_speed < results[i - 1].metrics.steady_speed - 1e-12)
        speed_monotone = false;
    out << "sweep summary -> " << summary_path
        << (speed_monotone ? " (speed non-decreasing)" : " (speed NOT monotone)") << "\n";
    return kExitOk;
  } catch (const NumericalBlowup& e) {
    err << "numerical failure at t=" << e.t << ": " << e.what() << "\n";
    return kExitNumeric;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  try {
    const ValidationReport report = validate_config_file(path);
    for (const auto& item : report.items) {
      const char* level = item.level == ValidationItem::Pass
                              ? "PASS"
                              : item.level == ValidationItem::Warn ? "WARN" : "FAIL";
      out << level << "  " << item.rule;
      if (!item.detail.empty()) out << "  (" << item.detail << ")";
      out << "\n";
    }
    out << (report.ok() ? "config valid" : "config INVALID") << ": " << path << "\n";
    return report.ok() ? kExitOk : kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
}

int cmd_compare(const std::string& path_a, const std::string& path_b, double tol,
                std::ostream& out, std::ostream& err) {
  try {
    const LogTable a = read_log_csv(path_a);
    const LogTable b = read_log_csv(path_b);
    const auto diffs = diff_log_tables(a, b);
    double worst = 0.0;
    for (const auto& d : diffs) {
      out << d.column << ": max abs dev " << num(d.max_abs_dev) << "\n";
      worst = std::max(worst, d.max_abs_dev);
    }
    out << "max deviation " << num(worst) << " (tolerance " << num(tol) << ")\n";
    return worst <= tol ? kExitOk : kExitDiff;
  } catch (const ConfigError& e) {
    err << "compare error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace hopsim
