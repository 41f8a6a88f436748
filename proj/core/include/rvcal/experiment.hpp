#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "rvcal/stream.hpp"
#include "rvcal/types.hpp"

namespace rvcal {

/// Repeated prequential runs over random consecutive segments of one dataset.
struct ExperimentPlan {
  std::string dataset = "dataset";
  std::vector<double> budgets{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4};
  std::size_t trials = 100;
  std::size_t segment_length = 2100;
  std::size_t warmup = 100;
  std::size_t window_capacity = 500;
  std::size_t retrain_interval = 1;
  std::uint64_t seed = 0;
  /// Worker threads for independent cells; 0 uses the hardware concurrency.
  unsigned threads = 0;

  std::size_t eval_length() const { return segment_length - warmup; }
};

struct CellResult {
  std::size_t strategy = 0;
  std::size_t budget = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::size_t segment_start = 0;
  double rmse = 0.0;
  double label_rate = 0.0;
};

struct ExperimentResult {
  std::vector<std::string> strategies;
  std::vector<double> budgets;
  std::size_t trials = 0;
  std::vector<std::size_t> segment_starts;  // per trial, shared by all strategies
  std::vector<CellResult> cells;            // strategy-major, then budget, then trial

  // Filled by aggregate().
  std::vector<std::vector<double>> mean_rmse;        // [strategy][budget]
  std::vector<std::vector<double>> mean_label_rate;  // [strategy][budget]
  std::vector<std::vector<double>> budget_ranks;     // [strategy][budget], 1 = lowest RMSE
  std::vector<double> average_rmse;                  // [strategy], mean over budgets
  std::vector<double> ranks;                         // [strategy], rank of average_rmse

  const CellResult& cell(std::size_t strategy, std::size_t budget, std::size_t trial) const;
};

/// Called once per finished run; calls are serialized.
using RecordSink = std::function<void(const StreamRunRecord&, const CellResult&)>;

/// Uniform start in [0, n - segment_length] for each trial, seeded per trial.
/// A start already taken by an earlier trial is redrawn when the range holds
/// at least `trials` positions.
std::vector<std::size_t> segment_starts(const ExperimentPlan& plan, std::size_t dataset_size);

/// Per-(trial, budget) run seed; identical for all strategies so that trial
/// t of every strategy sees the same segment and the same seed.
std::uint64_t cell_seed(const ExperimentPlan& plan, std::size_t trial, std::size_t budget);

/// Recomputes the aggregate tables from result.cells.
void aggregate(ExperimentResult& result);

/// Runs every (strategy, budget, trial) cell and aggregates. Throws
/// DatasetTooShort when the dataset is shorter than one segment.
ExperimentResult run_experiment(const ExperimentPlan& plan, std::span<const LabeledSample> data,
                                std::span<const Strategy> strategies, const RecordSink& sink = {});

}  // namespace rvcal
