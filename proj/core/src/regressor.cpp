#include "rvcal/regressor.hpp"

#include <Eigen/Dense>
#include <string>

#include "rvcal/error.hpp"

namespace rvcal {
namespace {

std::vector<double> targets_of(std::span<const LabeledSample> data) {
  std::vector<double> y(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) y[i] = data[i].target;
  return y;
}

}  // namespace

RidgeRegressor RidgeRegressor::fit(std::span<const LabeledSample> data, double penalty) {
  if (penalty < 0.0) throw Error(Errc::InvalidArgument, "ridge penalty must be non-negative");
  RidgeRegressor r;
  r.standardizer_ = Standardizer::fit(data);
  const auto n = static_cast<Eigen::Index>(data.size());
  const auto d = static_cast<Eigen::Index>(r.standardizer_.dim());

  Eigen::MatrixXd Z(n, d);
  Eigen::VectorXd y(n);
  Features row(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < n; ++i) {
    r.standardizer_.transform_into(data[static_cast<std::size_t>(i)].features, row);
    for (Eigen::Index j = 0; j < d; ++j) Z(i, j) = row[static_cast<std::size_t>(j)];
    y(i) = data[static_cast<std::size_t>(i)].target;
  }
  r.intercept_ = y.mean();
  y.array() -= r.intercept_;

  Eigen::MatrixXd gram = Z.transpose() * Z;
  gram.diagonal().array() += penalty;
  const Eigen::VectorXd beta = gram.completeOrthogonalDecomposition().solve(Z.transpose() * y);
  r.coef_.assign(beta.data(), beta.data() + beta.size());
  return r;
}

double RidgeRegressor::predict(std::span<const double> x) const {
  const Features z = standardizer_.transform(x);
  double y = intercept_;
  for (std::size_t j = 0; j < z.size(); ++j) y += coef_[j] * z[j];
  return y;
}

std::vector<double> RidgeRegressor::raw_coefficients() const {
  std::vector<double> c(coef_.size());
  for (std::size_t j = 0; j < c.size(); ++j) c[j] = coef_[j] / standardizer_.scale()[j];
  return c;
}

KnnRegressor::KnnRegressor(std::span<const LabeledSample> data, std::size_t neighbors)
    : index_(data, targets_of(data)), neighbors_(neighbors == 0 ? default_neighbor_count(data.size()) : neighbors) {}

double KnnRegressor::predict(std::span<const double> x) const {
  const auto found = index_.query(x, neighbors_);
  const auto w = inverse_distance_weights(found);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < found.size(); ++i) {
    num += w[i] * index_.label(found[i].index);
    den += w[i];
  }
  return num / den;
}

std::unique_ptr<Regressor> train_regressor(std::span<const LabeledSample> data, const RegressorConfig& config) {
  if (data.size() < 2) {
    throw Error(Errc::TooFewSamples, "regressor needs at least 2 samples, have " + std::to_string(data.size()));
  }
  switch (config.kind) {
    case RegressorKind::Ridge:
      return std::make_unique<RidgeRegressor>(RidgeRegressor::fit(data, config.ridge_penalty));
    case RegressorKind::Knn:
      return std::make_unique<KnnRegressor>(data, config.neighbors);
  }
  throw Error(Errc::InvalidArgument, "unknown regressor kind");
}

}  // namespace rvcal
