#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "rvcal/classifier.hpp"
#include "rvcal/discretizer.hpp"
#include "rvcal/regressor.hpp"
#include "rvcal/rng.hpp"
#include "rvcal/types.hpp"

namespace rvcal {

/// 1 - max_k p_k. Lies in [0, 1 - 1/K] for a valid posterior.
double member_uncertainty(std::span<const double> posterior);

/// Mean of member uncertainties; 0 for an empty ensemble.
double mean_uncertainty(std::span<const double> member_uncertainties);

/// Population standard deviation of committee predictions around their mean.
double committee_disagreement(std::span<const double> predictions);

struct RvcConfig {
  std::vector<int> class_counts{2, 4, 8, 16};
  ClassifierConfig classifier;
};

/// One discretization resolution: h for K classes and the classifier fitted
/// on the discretized window.
struct RvcMember {
  Discretizer discretizer;
  std::shared_ptr<const Classifier> classifier;
};

/// Regression-via-classification utility: the mean classifier uncertainty
/// over several class counts. Members whose K exceeds the number of distinct
/// window targets are skipped; with no members the utility is 0.
class RvcUtility {
 public:
  RvcUtility() = default;

  static RvcUtility train(std::span<const LabeledSample> data, const RvcConfig& config);

  double utility(std::span<const double> x) const;
  std::vector<Posterior> posteriors(std::span<const double> x) const;

  /// Regression through the finest member: class statistic of the most
  /// probable class. Throws TooFewDistinctValues when there are no members.
  double regress(std::span<const double> x, InverseMode mode = InverseMode::Mean) const;

  const std::vector<RvcMember>& members() const noexcept { return members_; }

 private:
  std::vector<RvcMember> members_;
};

struct QbcConfig {
  std::size_t committee_size = 10;
  double subsample_fraction = 0.9;
  RegressorConfig member{RegressorKind::Knn, 1.0, 0};
};

/// Query-by-committee: disagreement of L regressors, each trained on its own
/// uniform subsample (without replacement) of the window.
class QbcUtility {
 public:
  /// Member l draws its subsample from rng.split(l). Throws TooFewSamples
  /// when data has fewer than 3 samples.
  static QbcUtility train(std::span<const LabeledSample> data, const QbcConfig& config, const Rng& rng);

  /// floor(fraction * n), clamped to [2, n].
  static std::size_t subsample_size(std::size_t n, double fraction);

  double utility(std::span<const double> x) const;
  std::vector<double> predictions(std::span<const double> x) const;

  std::size_t committee_size() const noexcept { return members_.size(); }
  /// Window indices used by member l, ascending.
  const std::vector<std::size_t>& subsample(std::size_t l) const { return subsamples_.at(l); }

 private:
  std::vector<std::shared_ptr<const Regressor>> members_;
  std::vector<std::vector<std::size_t>> subsamples_;
};

/// Input-independent uniform utility for the random baseline.
class RandomUtility {
 public:
  explicit RandomUtility(Rng rng) : rng_(std::move(rng)) {}

  double next() { return rng_.uniform(); }

 private:
  Rng rng_;
};

}  // namespace rvcal
