#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "rvcal/discretizer.hpp"
#include "rvcal/neighbors.hpp"
#include "rvcal/standardizer.hpp"
#include "rvcal/types.hpp"

namespace rvcal {

enum class ClassifierKind { Logistic, Knn };

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::Logistic;
  // Multinomial logistic regression, full-batch gradient descent.
  double l2 = 1e-3;
  double learning_rate = 0.1;
  int max_iterations = 500;
  double gradient_tolerance = 1e-6;
  // k-NN; 0 selects max(1, round(sqrt(n))).
  std::size_t neighbors = 0;
};

/// Probabilistic classifier g: R^D -> [0,1]^K. Immutable once trained.
class Classifier {
 public:
  virtual ~Classifier() = default;

  /// Valid posterior of length classes(). Throws DimensionMismatch.
  virtual Posterior predict_proba(std::span<const double> x) const = 0;
  virtual int classes() const noexcept = 0;
  virtual std::size_t dim() const noexcept = 0;
};

/// Trains on (features, disc.classify(target)) pairs. Throws TooFewSamples
/// when data.size() < disc.k() and MissingClass when some class receives no
/// training point (refit the discretizer on the same data to avoid this).
std::unique_ptr<Classifier> train_classifier(std::span<const LabeledSample> data, const Discretizer& disc,
                                             const ClassifierConfig& config);

/// Design matrix for softmax regression: rows are standardized features
/// followed by a constant 1 column (bias).
struct SoftmaxProblem {
  std::size_t rows = 0;
  std::size_t cols = 0;  // D + 1
  int classes = 0;
  std::vector<double> design;  // rows x cols, row-major
  std::vector<int> labels;
};

/// Mean cross-entropy plus (l2 / 2) * ||W||^2 over non-bias rows. `weights`
/// is cols x classes, row-major.
double softmax_loss(const SoftmaxProblem& problem, std::span<const double> weights, double l2);
std::vector<double> softmax_gradient(const SoftmaxProblem& problem, std::span<const double> weights, double l2);

class LogisticClassifier final : public Classifier {
 public:
  LogisticClassifier(Standardizer standardizer, std::vector<double> weights, int classes);

  static LogisticClassifier fit(std::span<const LabeledSample> data, std::span<const int> labels, int classes,
                                const ClassifierConfig& config);

  Posterior predict_proba(std::span<const double> x) const override;
  int classes() const noexcept override { return classes_; }
  std::size_t dim() const noexcept override { return standardizer_.dim(); }

  const std::vector<double>& weights() const noexcept { return weights_; }
  /// Training loss before each gradient step and after the last one.
  const std::vector<double>& loss_history() const noexcept { return loss_history_; }

 private:
  Standardizer standardizer_;
  std::vector<double> weights_;
  int classes_;
  std::vector<double> loss_history_;
};

class KnnClassifier final : public Classifier {
 public:
  KnnClassifier(std::span<const LabeledSample> data, std::span<const int> labels, int classes, std::size_t neighbors);

  Posterior predict_proba(std::span<const double> x) const override;
  int classes() const noexcept override { return classes_; }
  std::size_t dim() const noexcept override { return index_.dim(); }
  std::size_t neighbors() const noexcept { return neighbors_; }

 private:
  NeighborIndex index_;
  int classes_;
  std::size_t neighbors_;
};

}  // namespace rvcal
