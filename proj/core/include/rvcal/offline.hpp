#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "rvcal/metrics.hpp"
#include "rvcal/regressor.hpp"
#include "rvcal/types.hpp"
#include "rvcal/utility.hpp"

namespace rvcal {

enum class OfflineEstimator { Rvc, Qbc };

std::string estimator_name(OfflineEstimator e);

struct OfflineConfig {
  std::size_t folds = 5;
  std::size_t bins = 10;
  RegressorConfig regressor;
  RvcConfig rvc;
  QbcConfig qbc;
  std::vector<OfflineEstimator> estimators{OfflineEstimator::Rvc, OfflineEstimator::Qbc};
  std::uint64_t seed = 0;
};

struct OfflineEstimatorResult {
  std::string name;
  std::vector<double> utility;     // per sample, in dataset order
  std::vector<double> percentile;  // percentile rank of utility, pooled over folds
  double rho = 0.0;                // Spearman(utility, |error|)
  std::vector<BinStats> bins;      // |error| by percentile-rank bin
};

struct OfflineResult {
  std::vector<double> abs_error;
  std::vector<OfflineEstimatorResult> estimators;

  const OfflineEstimatorResult& at(const std::string& name) const;
};

/// Contiguous [begin, end) ranges in time order; fold f starts at f * n / folds.
std::vector<std::pair<std::size_t, std::size_t>> sequential_folds(std::size_t n, std::size_t folds);

/// Sequential k-fold evaluation of utility against regression error: each
/// fold is scored by a regressor and estimators trained on the other folds.
OfflineResult run_offline_eval(std::span<const LabeledSample> data, const OfflineConfig& config);

}  // namespace rvcal
