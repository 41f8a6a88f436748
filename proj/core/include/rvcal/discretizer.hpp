#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rvcal {

/// Which class statistic maps a predicted class back to a real value.
enum class InverseMode { Mean, Median };

/// Maps a real target onto K ordered classes by 1-D k-means, and back.
///
/// Classes are 0-based and ordered by center. Because 1-D k-means cells are
/// contiguous intervals, classify() is monotone non-decreasing in y. A value
/// sitting exactly on a boundary belongs to the lower class.
class Discretizer {
 public:
  /// Fits K centers on `targets`. The optimal partition is found exactly
  /// and then polished with Lloyd iterations, so the result is a Lloyd fixed
  /// point. Throws NonFiniteTarget or TooFewDistinctValues (fewer than k
  /// distinct values).
  static Discretizer fit(std::span<const double> targets, int k);

  int k() const noexcept { return static_cast<int>(centers_.size()); }
  const std::vector<double>& centers() const noexcept { return centers_; }
  const std::vector<double>& boundaries() const noexcept { return boundaries_; }
  const std::vector<double>& class_means() const noexcept { return means_; }
  const std::vector<double>& class_medians() const noexcept { return medians_; }
  const std::vector<std::size_t>& class_counts() const noexcept { return counts_; }

  /// Number of boundaries strictly below y. Throws NonFiniteTarget.
  int classify(double y) const;

  /// Class statistic of argmax_k posterior[k] (ties to the lowest index).
  /// Throws DimensionMismatch when posterior.size() != k().
  double inverse(std::span<const double> posterior, InverseMode mode = InverseMode::Mean) const;

 private:
  std::vector<double> centers_;
  std::vector<double> boundaries_;
  std::vector<double> means_;
  std::vector<double> medians_;
  std::vector<std::size_t> counts_;
};

/// Number of distinct finite values in `values`.
std::size_t count_distinct(std::span<const double> values);

}  // namespace rvcal
