#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rvcal/budget.hpp"
#include "rvcal/regressor.hpp"
#include "rvcal/types.hpp"
#include "rvcal/utility.hpp"

namespace rvcal {

enum class UtilityKind { Rvc, Qbc, Random };

/// A utility estimator paired with a budget manager and model settings.
struct Strategy {
  std::string name;
  UtilityKind utility = UtilityKind::Rvc;
  BudgetConfig budget;
  RegressorConfig regressor;
  RvcConfig rvc;
  QbcConfig qbc;
  /// Predict through the RvC estimator (class statistic of the most likely
  /// class) instead of the separately trained regressor.
  bool rvc_regression = false;
  InverseMode inverse = InverseMode::Mean;
};

/// Throws InvalidArgument for combinations that cannot work: VarUn/Split on
/// unbounded QBC utilities, the random manager without random utilities, or
/// RvC regression without an RvC estimator.
void validate(const Strategy& strategy);

struct StreamSettings {
  std::size_t warmup = 100;
  std::size_t window_capacity = 500;
  /// Retrain after every n-th acquisition; 1 follows the plain loop.
  std::size_t retrain_interval = 1;
};

struct StepRecord {
  std::size_t step = 0;  // position within the segment
  double prediction = 0.0;
  double target = 0.0;
  double abs_error = 0.0;
  double utility = 0.0;
  bool acquired = false;
  double threshold = 0.0;
  double spent = 0.0;
};

struct StreamRunRecord {
  std::string strategy;
  std::string dataset;
  double budget = 0.0;
  std::uint64_t seed = 0;
  std::size_t segment_start = 0;
  std::vector<StepRecord> steps;

  double rmse() const;
  std::size_t acquisitions() const;
  double label_rate() const;
};

/// Prequential streaming active learning over one segment. The first
/// `warmup` samples are labeled and train both models; every later sample
/// is predicted and scored before the budget manager decides whether its
/// label is acquired, pushed into the window, and the models refit.
///
/// Throws DatasetTooShort when the segment has no samples after warmup.
StreamRunRecord run_stream(std::span<const LabeledSample> segment, const Strategy& strategy, double budget,
                           const StreamSettings& settings, std::uint64_t seed);

}  // namespace rvcal
