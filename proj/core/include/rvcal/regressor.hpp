#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "rvcal/neighbors.hpp"
#include "rvcal/standardizer.hpp"
#include "rvcal/types.hpp"

namespace rvcal {

enum class RegressorKind { Ridge, Knn };

struct RegressorConfig {
  RegressorKind kind = RegressorKind::Ridge;
  /// L2 penalty on standardized coefficients; the intercept is unpenalized.
  double ridge_penalty = 1.0;
  /// k-NN; 0 selects max(1, round(sqrt(n))).
  std::size_t neighbors = 0;
};

/// Point regressor f: R^D -> R. Immutable once trained.
class Regressor {
 public:
  virtual ~Regressor() = default;

  /// Throws DimensionMismatch.
  virtual double predict(std::span<const double> x) const = 0;
  virtual std::size_t dim() const noexcept = 0;
};

/// Full refit on `data`. Throws TooFewSamples when fewer than 2 samples.
std::unique_ptr<Regressor> train_regressor(std::span<const LabeledSample> data, const RegressorConfig& config);

class RidgeRegressor final : public Regressor {
 public:
  static RidgeRegressor fit(std::span<const LabeledSample> data, double penalty);

  double predict(std::span<const double> x) const override;
  std::size_t dim() const noexcept override { return standardizer_.dim(); }

  double intercept() const noexcept { return intercept_; }
  /// Coefficients in original feature units.
  std::vector<double> raw_coefficients() const;

 private:
  Standardizer standardizer_;
  std::vector<double> coef_;  // on standardized features
  double intercept_ = 0.0;    // mean training target
};

class KnnRegressor final : public Regressor {
 public:
  KnnRegressor(std::span<const LabeledSample> data, std::size_t neighbors);

  double predict(std::span<const double> x) const override;
  std::size_t dim() const noexcept override { return index_.dim(); }
  std::size_t neighbors() const noexcept { return neighbors_; }

 private:
  NeighborIndex index_;
  std::size_t neighbors_;
};

}  // namespace rvcal
