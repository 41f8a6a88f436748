#pragma once

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rvcal/data.hpp"
#include "rvcal/experiment.hpp"
#include "rvcal/offline.hpp"
#include "rvcal/stream.hpp"

namespace rvcal::cli {

/// Malformed or inconsistent configuration (exit code 1).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Where samples come from: a CSV file or the synthetic generator.
struct DataSource {
  std::optional<std::filesystem::path> csv;
  DatasetSpec csv_spec;
  std::optional<SyntheticSpec> synthetic;
};

struct ExperimentConfig {
  DataSource data;
  std::vector<Strategy> strategies;
  ExperimentPlan plan;
  OfflineConfig offline;
  std::filesystem::path output_dir = "rvcal-out";
};

/// Parses a JSON document. Relative paths resolve against `base_dir`.
/// Throws ConfigError.
ExperimentConfig parse_config(const std::string& text, const std::filesystem::path& base_dir);

/// Reads and parses a config file; the output directory is replaced by
/// $RVCAL_OUTPUT_DIR when that variable is set and non-empty.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Materializes the data source. Throws rvcal::Error for dataset problems.
Dataset load_data(const DataSource& source);

inline constexpr const char* kOutputDirEnv = "RVCAL_OUTPUT_DIR";

}  // namespace rvcal::cli
