#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include "rvcal/data.hpp"

namespace rvcal::cli {

enum ExitCode : int { kOk = 0, kConfigError = 1, kDatasetError = 2, kRuntimeError = 3 };

/// Streaming experiment. Writes records/<strategy>_b<budget>_t<trial>.csv,
/// records/index.csv, summary.csv and summary.json under the output
/// directory. `output_dir` overrides the config and the environment.
int cmd_run(const std::filesystem::path& config, std::ostream& err,
            const std::optional<std::filesystem::path>& output_dir = std::nullopt);

/// Offline evaluation. Writes offline_points.csv, offline_bins.csv and
/// rho.json under the output directory.
int cmd_offline(const std::filesystem::path& config, std::ostream& err,
                const std::optional<std::filesystem::path>& output_dir = std::nullopt);

/// Writes a synthetic stream as CSV.
int cmd_synth(const SyntheticSpec& spec, const std::filesystem::path& out, std::ostream& err);

}  // namespace rvcal::cli
