#include "hopsim/log_io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "hopsim/errors.hpp"

namespace hopsim {

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

const char* const kColumns =
    "t,q_yaw,q_pitch,q_hip,q_knee,qd_yaw,qd_pitch,qd_hip,qd_knee,"
    "u_hip,u_knee,u_cmd_hip,u_cmd_knee,v_cmd_hip,v_cmd_knee,"
    "current_hip,current_knee,grf_x,grf_y,grf_z,foot_z,phase,event,sat";

}  // namespace

Provenance make_provenance(const FlatConfig& robot, const FlatConfig& gait,
                           const std::map<std::string, std::string>& run) {
  Provenance prov;
  for (const auto& [k, v] : robot) prov["robot." + k] = v;
  for (const auto& [k, v] : gait) prov["gait." + k] = v;
  for (const auto& [k, v] : run) prov["run." + k] = v;
  return prov;
}

void write_log_csv(const std::string& path, const EpisodeLog& log, const Provenance& prov) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file for writing: " + path);

  out << "# hopsim episode log\n";
  out << "# schema_version: " << kLogSchemaVersion << "\n";
  out << "# units: t s, q rad, qd rad/s, u N*m, v_cmd V, current A, grf N, foot_z m\n";
  out << "# phase: 0 aerial, 1 stance; event bits: 1 touchdown, 2 liftoff, 4 lap, "
         "8 controller stance timeout, 16 penetration fix\n";
  out << "# sat bits: 1 hip voltage, 2 knee voltage, 4 hip current, 8 knee current\n";
  out << "# sample_period: " << num(log.sample_period) << "\n";
  out << "# electrical_energy: " << num(log.electrical_energy) << "\n";
  for (const auto& [k, v] : prov) out << "# config " << k << " = " << v << "\n";
  out << "# events:";
  for (const auto& e : log.events) out << " " << num(e.t) << ":" << e.kind;
  out << "\n";

  out << kColumns << "\n";
  for (const auto& s : log.samples) {
    out << num(s.t);
    for (int i = 0; i < 4; ++i) out << ',' << num(s.q[i]);
    for (int i = 0; i < 4; ++i) out << ',' << num(s.qd[i]);
    out << ',' << num(s.u[0]) << ',' << num(s.u[1]);
    out << ',' << num(s.u_cmd[0]) << ',' << num(s.u_cmd[1]);
    out << ',' << num(s.v_cmd[0]) << ',' << num(s.v_cmd[1]);
    out << ',' << num(s.current[0]) << ',' << num(s.current[1]);
    for (int i = 0; i < 3; ++i) out << ',' << num(s.grf[i]);
    out << ',' << num(s.foot_z);
    out << ',' << static_cast<int>(s.phase);
    out << ',' << s.event;
    out << ',' << s.sat;
    out << '\n';
  }
  if (!out) throw ConfigError("write failed: " + path);
}

LogTable read_log_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open log file: " + path);

  LogTable table;
  std::string line;
  bool header_seen = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const std::string tag = "# schema_version: ";
      if (line.rfind(tag, 0) == 0) table.schema_version = std::stoi(line.substr(tag.size()));
      continue;
    }
    std::stringstream ss(line);
    std::string cell;
    if (!header_seen) {
      while (std::getline(ss, cell, ',')) table.columns.push_back(cell);
      header_seen = true;
      continue;
    }
    std::vector<double> row;
    row.reserve(table.columns.size());
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        row.push_back(std::nan(""));
      }
    }
    table.rows.push_back(std::move(row));
  }
  if (!header_seen) throw ConfigError("log file has no column header: " + path);
  return table;
}

void write_metrics_yaml(const std::string& path, const Metrics& metrics,
                        const Provenance& prov, bool insufficient_data) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open output file for writing: " + path);

  out << "# hopsim episode metrics\n";
  out << "schema_version: " << kMetricsSchemaVersion << "\n";
  out << "insufficient_data: " << (insufficient_data ? "true" : "false") << "\n";
  out << "hop_cycles: " << metrics.hop_cycles << "\n";
  out << "touchdown_count: " << metrics.touchdown_count << "\n";
  out << "liftoff_count: " << metrics.liftoff_count << "\n";
  out << "steady_speed: " << num(metrics.steady_speed) << "\n";
  out << "mean_stance_duration: " << num(metrics.mean_stance_duration) << "\n";
  out << "apex_hop_height: " << num(metrics.apex_hop_height) << "\n";
  out << "electrical_energy: " << num(metrics.electrical_energy) << "\n";
  out << "distance: " << num(metrics.distance) << "\n";
  out << "cost_of_transport: "
      << (metrics.cot_defined ? num(metrics.cost_of_transport) : std::string(".inf"))
      << "\n";
  out << "saturated_samples: " << metrics.saturated_samples << "\n";
  out << "lap_times:";
  if (metrics.lap_times.empty()) {
    out << " []\n";
  } else {
    out << "\n";
    for (double t : metrics.lap_times) out << "  - " << num(t) << "\n";
  }
  out << "resolved_config:\n";
  for (const auto& [k, v] : prov) out << "  " << k << ": \"" << v << "\"\n";
  if (!out) throw ConfigError("write failed: " + path);
}

std::vector<ColumnDiff> diff_log_tables(const LogTable& a, const LogTable& b) {
  if (a.schema_version != b.schema_version)
    throw ConfigError("log schema mismatch: " + std::to_string(a.schema_version) +
                      " vs " + std::to_string(b.schema_version));
  if (a.columns != b.columns) throw ConfigError("log column sets differ");
  if (a.rows.size() != b.rows.size())
    throw ConfigError("log row counts differ: " + std::to_string(a.rows.size()) + " vs " +
                      std::to_string(b.rows.size()));

  std::vector<ColumnDiff> diffs;
  for (size_t c = 0; c < a.columns.size(); ++c) {
    double max_dev = 0.0;
    for (size_t r = 0; r < a.rows.size(); ++r) {
      const double x = c < a.rows[r].size() ? a.rows[r][c] : std::nan("");
      const double y = c < b.rows[r].size() ? b.rows[r][c] : std::nan("");
      if (std::isnan(x) && std::isnan(y)) continue;
      const double dev = std::abs(x - y);
      if (std::isnan(dev))
        max_dev = std::numeric_limits<double>::infinity();
      else
        max_dev = std::max(max_dev, dev);
    }
    diffs.push_back({a.columns[c], max_dev});
  }
  return diffs;
}

}  // namespace hopsim
