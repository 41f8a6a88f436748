#include "rvcal/classifier.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <string>

#include "rvcal/error.hpp"

namespace rvcal {
namespace {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const RowMatrix> as_matrix(std::span<const double> v, std::size_t rows, std::size_t cols) {
  return {v.data(), static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols)};
}

// Row-wise softmax of scores, in place.
void softmax_rows(RowMatrix& scores) {
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    auto row = scores.row(i);
    row.array() = (row.array() - row.maxCoeff()).exp();
    row /= row.sum();
  }
}

SoftmaxProblem make_problem(std::span<const LabeledSample> data, std::span<const int> labels, int classes,
                            const Standardizer& standardizer) {
  SoftmaxProblem p;
  p.rows = data.size();
  p.cols = standardizer.dim() + 1;
  p.classes = classes;
  p.design.resize(p.rows * p.cols);
  p.labels.assign(labels.begin(), labels.end());
  for (std::size_t i = 0; i < p.rows; ++i) {
    auto row = std::span<double>(p.design).subspan(i * p.cols, p.cols);
    standardizer.transform_into(data[i].features, row.first(p.cols - 1));
    row.back() = 1.0;
  }
  return p;
}

void check_weights(const SoftmaxProblem& p, std::span<const double> weights) {
  if (weights.size() != p.cols * static_cast<std::size_t>(p.classes)) {
    throw Error(Errc::DimensionMismatch, "weight matrix does not match the problem shape");
  }
}

}  // namespace

double softmax_loss(const SoftmaxProblem& p, std::span<const double> weights, double l2) {
  check_weights(p, weights);
  const auto k = static_cast<std::size_t>(p.classes);
  const auto X = as_matrix(p.design, p.rows, p.cols);
  const auto W = as_matrix(weights, p.cols, k);
  const RowMatrix scores = X * W;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < scores.rows(); ++i) {
    const auto row = scores.row(i);
    const double m = row.maxCoeff();
    const double lse = m + std::log((row.array() - m).exp().sum());
    loss += lse - row(p.labels[static_cast<std::size_t>(i)]);
  }
  loss /= static_cast<double>(p.rows);
  const auto penalized = W.topRows(static_cast<Eigen::Index>(p.cols - 1));
  return loss + 0.5 * l2 * penalized.squaredNorm();
}

std::vector<double> softmax_gradient(const SoftmaxProblem& p, std::span<const double> weights, double l2) {
  check_weights(p, weights);
  const auto k = static_cast<std::size_t>(p.classes);
  const auto X = as_matrix(p.design, p.rows, p.cols);
  const auto W = as_matrix(weights, p.cols, k);
  RowMatrix residual = X * W;
  softmax_rows(residual);
  for (std::size_t i = 0; i < p.rows; ++i) residual(static_cast<Eigen::Index>(i), p.labels[i]) -= 1.0;
  RowMatrix grad = X.transpose() * residual / static_cast<double>(p.rows);
  grad.topRows(static_cast<Eigen::Index>(p.cols - 1)) += l2 * W.topRows(static_cast<Eigen::Index>(p.cols - 1));
  return {grad.data(), grad.data() + grad.size()};
}

LogisticClassifier::LogisticClassifier(Standardizer standardizer, std::vector<double> weights, int classes)
    : standardizer_(std::move(standardizer)), weights_(std::move(weights)), classes_(classes) {
  if (weights_.size() != (standardizer_.dim() + 1) * static_cast<std::size_t>(classes_)) {
    throw Error(Errc::DimensionMismatch, "weight matrix must be (D + 1) x K");
  }
}

LogisticClassifier LogisticClassifier::fit(std::span<const LabeledSample> data, std::span<const int> labels,
                                           int classes, const ClassifierConfig& config) {
  Standardizer standardizer = Standardizer::fit(data);
  const SoftmaxProblem p = make_problem(data, labels, classes, standardizer);
  const auto k = static_cast<Eigen::Index>(classes);
  const auto cols = static_cast<Eigen::Index>(p.cols);
  const auto X = as_matrix(p.design, p.rows, p.cols);

  RowMatrix W = RowMatrix::Zero(cols, k);
  RowMatrix onehot = RowMatrix::Zero(static_cast<Eigen::Index>(p.rows), k);
  for (std::size_t i = 0; i < p.rows; ++i) onehot(static_cast<Eigen::Index>(i), p.labels[i]) = 1.0;

  std::vector<double> history;
  history.reserve(static_cast<std::size_t>(config.max_iterations) + 1);
  const double inv_n = 1.0 / static_cast<double>(p.rows);
  RowMatrix probs(static_cast<Eigen::Index>(p.rows), k);
  Eigen::VectorXd row_max(static_cast<Eigen::Index>(p.rows));
  for (int iter = 0;; ++iter) {
    probs.noalias() = X * W;
    row_max = probs.rowwise().maxCoeff();
    double loss = 0.0;
    for (Eigen::Index i = 0; i < probs.rows(); ++i) loss += row_max(i) - probs(i, p.labels[static_cast<std::size_t>(i)]);
    probs.colwise() -= row_max;
    probs = probs.array().exp().matrix();
    const Eigen::VectorXd z = probs.rowwise().sum();
    loss += z.array().log().sum();
    probs.array().colwise() /= z.array();
    loss = loss * inv_n + 0.5 * config.l2 * W.topRows(cols - 1).squaredNorm();
    history.push_back(loss);
    if (iter == config.max_iterations) break;

    RowMatrix grad = X.transpose() * (probs - onehot) * inv_n;
    grad.topRows(cols - 1) += config.l2 * W.topRows(cols - 1);
    if (grad.norm() < config.gradient_tolerance) break;
    W -= config.learning_rate * grad;
  }

  LogisticClassifier model(std::move(standardizer), std::vector<double>(W.data(), W.data() + W.size()), classes);
  model.loss_history_ = std::move(history);
  return model;
}

Posterior LogisticClassifier::predict_proba(std::span<const double> x) const {
  const std::size_t d = standardizer_.dim();
  const Features z = standardizer_.transform(x);
  const auto k = static_cast<std::size_t>(classes_);
  Posterior p(k, 0.0);
  for (std::size_t c = 0; c < k; ++c) p[c] = weights_[d * k + c];
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t c = 0; c < k; ++c) p[c] += z[j] * weights_[j * k + c];
  }
  const double m = *std::max_element(p.begin(), p.end());
  double sum = 0.0;
  for (auto& v : p) sum += (v = std::exp(v - m));
  for (auto& v : p) v /= sum;
  return p;
}

KnnClassifier::KnnClassifier(std::span<const LabeledSample> data, std::span<const int> labels, int classes,
                             std::size_t neighbors)
    : index_(data, std::vector<double>(labels.begin(), labels.end())),
      classes_(classes),
      neighbors_(neighbors == 0 ? default_neighbor_count(data.size()) : neighbors) {}

Posterior KnnClassifier::predict_proba(std::span<const double> x) const {
  const auto found = index_.query(x, neighbors_);
  const auto w = inverse_distance_weights(found);
  Posterior p(static_cast<std::size_t>(classes_), 0.0);
  double total = 0.0;
  for (std::size_t i = 0; i < found.size(); ++i) {
    p[static_cast<std::size_t>(index_.label(found[i].index))] += w[i];
    total += w[i];
  }
  for (auto& v : p) v /= total;
  return p;
}

std::unique_ptr<Classifier> train_classifier(std::span<const LabeledSample> data, const Discretizer& disc,
                                             const ClassifierConfig& config) {
  const int k = disc.k();
  if (data.size() < static_cast<std::size_t>(k)) {
    throw Error(Errc::TooFewSamples, "need at least " + std::to_string(k) + " samples for " + std::to_string(k) +
                                         " classes, have " + std::to_string(data.size()));
  }
  std::vector<int> labels(data.size());
  std::vector<std::size_t> seen(static_cast<std::size_t>(k), 0);
  for (std::size_t i = 0; i < data.size(); ++i) {
    labels[i] = disc.classify(data[i].target);
    ++seen[static_cast<std::size_t>(labels[i])];
  }
  for (int c = 0; c < k; ++c) {
    if (seen[static_cast<std::size_t>(c)] == 0) {
      throw Error(Errc::MissingClass, "class " + std::to_string(c) + " has no training points");
    }
  }
  switch (config.kind) {
    case ClassifierKind::Logistic:
      return std::make_unique<LogisticClassifier>(LogisticClassifier::fit(data, labels, k, config));
    case ClassifierKind::Knn:
      return std::make_unique<KnnClassifier>(data, labels, k, config.neighbors);
  }
  throw Error(Errc::InvalidArgument, "unknown classifier kind");
}

}  // namespace rvcal
