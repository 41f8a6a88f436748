#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rvcal/types.hpp"

namespace rvcal {

enum class MissingPolicy { Drop, Error };

/// Which CSV columns form a dataset. An empty feature list selects every
/// column except the target, in header order.
struct DatasetSpec {
  std::string name;
  std::string target;
  std::vector<std::string> features;
  /// Data rows the file must hold, counted before missing-value dropping.
  std::optional<std::size_t> expected_rows;
  MissingPolicy missing = MissingPolicy::Drop;
};

/// Samples in stream (file row) order.
struct Dataset {
  std::string name;
  std::vector<std::string> feature_names;
  std::string target_name;
  std::vector<LabeledSample> samples;
  std::size_t dropped_rows = 0;

  std::size_t dim() const noexcept { return feature_names.size(); }
  /// Data rows in the source, including dropped ones.
  std::size_t rows_read() const noexcept { return samples.size() + dropped_rows; }
};

/// Column layouts of the public releases of the House (California housing),
/// Solar (HI-SEAS) and Bike (hourly rental) datasets.
std::optional<DatasetSpec> preset_dataset(std::string_view name);

/// Comma-separated, header row first, '.' decimal point. Empty, NA or NaN
/// cells are missing; rows with a missing selected value are dropped or
/// rejected per spec.missing. Throws MissingColumn, UnparsableValue (with
/// the 1-based line number), EmptyDataset, RowCountMismatch.
Dataset parse_csv(std::istream& in, const DatasetSpec& spec);
Dataset load_csv(const std::filesystem::path& path, const DatasetSpec& spec);

/// Writes feature columns then the target, 17 significant digits.
void write_csv(std::ostream& out, const Dataset& data);

enum class DriftKind { Abrupt, Gradual, Heteroscedastic };

std::optional<DriftKind> parse_drift_kind(std::string_view name);
std::string_view to_string(DriftKind kind);

/// Synthetic linear regression streams.
///   Abrupt:  y = w_before.x + e before drift_position, w_after.x + e from it on.
///   Gradual: coefficients move linearly from w_before to w_after over
///            [drift_position, drift_position + drift_width).
///   Heteroscedastic: y = w_before.x + noise * |x| * z, with x = r * v for a
///            uniform direction v and r ~ Exp(1); no drift.
/// x ~ N(0, I) and e ~ N(0, noise^2) for the drifting kinds.
struct SyntheticSpec {
  DriftKind kind = DriftKind::Abrupt;
  std::size_t length = 5000;
  std::size_t dim = 5;
  std::optional<std::size_t> drift_position;  // default length / 2
  std::size_t drift_width = 500;
  double noise = 0.1;
  std::uint64_t seed = 0;
};

struct SyntheticConcept {
  std::vector<double> before;
  std::vector<double> after;
};

/// Coefficients the generator uses for `spec`. Throws InvalidSpec.
SyntheticConcept synthetic_concept(const SyntheticSpec& spec);
/// Throws InvalidSpec.
Dataset generate_synthetic(const SyntheticSpec& spec);

}  // namespace rvcal
