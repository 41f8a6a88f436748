#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "rvcal/types.hpp"

namespace rvcal {

/// Per-feature z-score transform fitted on a training window.
/// Constant features get unit scale so they map to zero.
class Standardizer {
 public:
  Standardizer() = default;

  static Standardizer fit(std::span<const LabeledSample> data);

  std::size_t dim() const noexcept { return mean_.size(); }
  const std::vector<double>& mean() const noexcept { return mean_; }
  const std::vector<double>& scale() const noexcept { return scale_; }

  /// Throws DimensionMismatch when x.size() != dim().
  Features transform(std::span<const double> x) const;
  void transform_into(std::span<const double> x, std::span<double> out) const;

 private:
  std::vector<double> mean_;
  std::vector<double> scale_;
};

}  // namespace rvcal
