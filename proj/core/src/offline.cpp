#include "rvcal/offline.hpp"

#include <cmath>

#include "rvcal/error.hpp"
#include "rvcal/rng.hpp"

namespace rvcal {

std::string estimator_name(OfflineEstimator e) { return e == OfflineEstimator::Rvc ? "rvc" : "qbc"; }

const OfflineEstimatorResult& OfflineResult::at(const std::string& name) const {
  for (const auto& e : estimators) {
    if (e.name == name) return e;
  }
  throw Error(Errc::InvalidArgument, "no offline result for estimator '" + name + "'");
}

std::vector<std::pair<std::size_t, std::size_t>> sequential_folds(std::size_t n, std::size_t folds) {
  if (folds < 2) throw Error(Errc::InvalidArgument, "need at least 2 folds");
  if (n < folds) throw Error(Errc::TooFewSamples, "fewer samples than folds");
  std::vector<std::pair<std::size_t, std::size_t>> out(folds);
  for (std::size_t f = 0; f < folds; ++f) out[f] = {f * n / folds, (f + 1) * n / folds};
  return out;
}

OfflineResult run_offline_eval(std::span<const LabeledSample> data, const OfflineConfig& config) {
  const auto folds = sequential_folds(data.size(), config.folds);
  OfflineResult result;
  result.abs_error.assign(data.size(), 0.0);
  result.estimators.resize(config.estimators.size());
  for (std::size_t e = 0; e < config.estimators.size(); ++e) {
    result.estimators[e].name = estimator_name(config.estimators[e]);
    result.estimators[e].utility.assign(data.size(), 0.0);
  }

  const Rng root(config.seed);
  std::vector<LabeledSample> train;
  for (std::size_t f = 0; f < folds.size(); ++f) {
    const auto [lo, hi] = folds[f];
    train.clear();
    train.insert(train.end(), data.begin(), data.begin() + static_cast<std::ptrdiff_t>(lo));
    train.insert(train.end(), data.begin() + static_cast<std::ptrdiff_t>(hi), data.end());

    const auto regressor = train_regressor(train, config.regressor);
    for (std::size_t i = lo; i < hi; ++i) {
      result.abs_error[i] = std::abs(regressor->predict(data[i].features) - data[i].target);
    }
    for (std::size_t e = 0; e < config.estimators.size(); ++e) {
      auto& out = result.estimators[e].utility;
      if (config.estimators[e] == OfflineEstimator::Rvc) {
        const auto est = RvcUtility::train(train, config.rvc);
        for (std::size_t i = lo; i < hi; ++i) out[i] = est.utility(data[i].features);
      } else {
        const auto est = QbcUtility::train(train, config.qbc, root.split(f));
        for (std::size_t i = lo; i < hi; ++i) out[i] = est.utility(data[i].features);
      }
    }
  }

  for (auto& e : result.estimators) {
    e.percentile = percentile_rank(e.utility);
    e.rho = spearman_rho(e.utility, result.abs_error);
    e.bins = binned_stats(e.percentile, result.abs_error, config.bins);
  }
  return result;
}

}  // namespace rvcal
