#pragma once

#include <string>
#include <vector>

#include "hopsim/config.hpp"
#include "hopsim/episode.hpp"
#include "hopsim/metrics.hpp"

namespace hopsim {

inline constexpr int kLogSchemaVersion = 1;
inline constexpr int kMetricsSchemaVersion = 1;

// Provenance block written into every output file: resolved flat configs plus
// run settings, keys prefixed robot. / gait. / run.
using Provenance = std::map<std::string, std::string>;

Provenance make_provenance(const FlatConfig& robot, const FlatConfig& gait,
                           const std::map<std::string, std::string>& run);

// CSV episode log with '#'-prefixed metadata lines (schema version, column
// units, provenance) and one row per control period.
void write_log_csv(const std::string& path, const EpisodeLog& log, const Provenance& prov);

// Parsed-back log: column names plus numeric rows. Non-numeric cells are NaN.
struct LogTable {
  int schema_version = 0;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

LogTable read_log_csv(const std::string& path);

// Sidecar metrics file (YAML): schema version, metrics and provenance.
void write_metrics_yaml(const std::string& path, const Metrics& metrics,
                        const Provenance& prov, bool insufficient_data);

struct ColumnDiff {
  std::string column;
  double max_abs_dev;
};

// Per-column max abs deviation between two logs. Throws ConfigError on schema
// or shape mismatch.
std::vector<ColumnDiff> diff_log_tables(const LogTable& a, const LogTable& b);

}  // namespace hopsim
