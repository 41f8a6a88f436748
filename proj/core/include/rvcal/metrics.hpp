#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rvcal {

/// sqrt(mean(e^2)). Throws EmptyInput.
double rmse(std::span<const double> errors);

/// 1-based ranks, ascending; tied values share their average rank.
std::vector<double> average_ranks(std::span<const double> values);

/// Spearman rank correlation (Pearson correlation of average ranks).
/// Returns 0 when either side is constant. Throws EmptyInput, LengthMismatch.
double spearman_rho(std::span<const double> a, std::span<const double> b);

/// 100 * (rank - 1) / (n - 1) with average ranks; a single value maps to 50.
std::vector<double> percentile_rank(std::span<const double> values);

struct BinStats {
  double lower = 0.0;
  double upper = 0.0;
  std::size_t count = 0;
  double mean = 0.0;    // 0 for an empty bin
  double stddev = 0.0;  // population standard deviation
};

/// Equal-width bins over percentile ranks in [0, 100]; the last bin is
/// closed on the right. Summarizes `values` per bin.
std::vector<BinStats> binned_stats(std::span<const double> percentiles, std::span<const double> values,
                                   std::size_t bins = 10);

}  // namespace rvcal
