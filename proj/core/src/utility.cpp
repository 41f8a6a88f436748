#include "rvcal/utility.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rvcal/error.hpp"

namespace rvcal {

double member_uncertainty(std::span<const double> posterior) {
  if (posterior.empty()) throw Error(Errc::EmptyInput, "empty posterior");
  return 1.0 - *std::max_element(posterior.begin(), posterior.end());
}

double committee_disagreement(std::span<const double> predictions) {
  if (predictions.empty()) throw Error(Errc::EmptyInput, "empty committee");
  const double n = static_cast<double>(predictions.size());
  const double mean = std::accumulate(predictions.begin(), predictions.end(), 0.0) / n;
  double ss = 0.0;
  for (double p : predictions) ss += (p - mean) * (p - mean);
  return std::sqrt(ss / n);
}

RvcUtility RvcUtility::train(std::span<const LabeledSample> data, const RvcConfig& config) {
  std::vector<double> targets(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) targets[i] = data[i].target;
  const std::size_t distinct = count_distinct(targets);

  RvcUtility est;
  for (int k : config.class_counts) {
    if (k < 2) throw Error(Errc::InvalidArgument, "RvC class counts must be at least 2");
    if (static_cast<std::size_t>(k) > distinct) continue;
    Discretizer disc = Discretizer::fit(targets, k);
    std::shared_ptr<const Classifier> clf = train_classifier(data, disc, config.classifier);
    est.members_.push_back({std::move(disc), std::move(clf)});
  }
  return est;
}

std::vector<Posterior> RvcUtility::posteriors(std::span<const double> x) const {
  std::vector<Posterior> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m.classifier->predict_proba(x));
  return out;
}

double mean_uncertainty(std::span<const double> member_uncertainties) {
  if (member_uncertainties.empty()) return 0.0;
  double sum = 0.0;
  for (double u : member_uncertainties) sum += u;
  return sum / static_cast<double>(member_uncertainties.size());
}

double RvcUtility::utility(std::span<const double> x) const {
  std::vector<double> u;
  u.reserve(members_.size());
  for (const auto& m : members_) u.push_back(member_uncertainty(m.classifier->predict_proba(x)));
  return mean_uncertainty(u);
}

double RvcUtility::regress(std::span<const double> x, InverseMode mode) const {
  if (members_.empty()) throw Error(Errc::TooFewDistinctValues, "RvC estimator has no members");
  const auto& finest = *std::max_element(members_.begin(), members_.end(), [](const RvcMember& a, const RvcMember& b) {
    return a.discretizer.k() < b.discretizer.k();
  });
  return finest.discretizer.inverse(finest.classifier->predict_proba(x), mode);
}

std::size_t QbcUtility::subsample_size(std::size_t n, double fraction) {
  const auto m = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(n) + 1e-9));
  return std::clamp<std::size_t>(m, 2, n);
}

QbcUtility QbcUtility::train(std::span<const LabeledSample> data, const QbcConfig& config, const Rng& rng) {
  if (data.size() < 3) throw Error(Errc::TooFewSamples, "QBC needs at least 3 labeled samples");
  if (config.committee_size < 2) throw Error(Errc::InvalidArgument, "QBC committee needs at least 2 members");
  if (!(config.subsample_fraction > 0.0 && config.subsample_fraction <= 1.0)) {
    throw Error(Errc::InvalidArgument, "QBC subsample fraction must lie in (0, 1]");
  }
  const std::size_t n = data.size();
  const std::size_t m = subsample_size(n, config.subsample_fraction);

  QbcUtility est;
  std::vector<std::size_t> perm(n);
  std::vector<LabeledSample> subset;
  for (std::size_t l = 0; l < config.committee_size; ++l) {
    Rng member_rng = rng.split(l);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) std::swap(perm[i], perm[i + member_rng.index(n - i)]);
    std::vector<std::size_t> chosen(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(chosen.begin(), chosen.end());
    subset.clear();
    for (std::size_t idx : chosen) subset.push_back(data[idx]);
    est.members_.push_back(train_regressor(subset, config.member));
    est.subsamples_.push_back(std::move(chosen));
  }
  return est;
}

std::vector<double> QbcUtility::predictions(std::span<const double> x) const {
  std::vector<double> out;
  out.reserve(members_.size());
  for (const auto& m : members_) out.push_back(m->predict(x));
  return out;
}

double QbcUtility::utility(std::span<const double> x) const { return committee_disagreement(predictions(x)); }

}  // namespace rvcal
